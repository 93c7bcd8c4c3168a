import os

# --- BATAS UKURAN (brute force) ---
ORACLE_CAP = int(os.environ.get("SIXV_ORACLE_CAP", "24"))      # edge cap holant_brute / eulerian_stats
TUTTE_CAP = int(os.environ.get("SIXV_TUTTE_CAP", "12"))        # edge cap deletion-contraction
CSP_BRUTE_CAP = int(os.environ.get("SIXV_CSP_CAP", "20"))      # variable cap csp_brute
MATCHING_CAP = int(os.environ.get("SIXV_MATCHING_CAP", "16"))  # node cap matching_signature

# --- INTERPOLASI ---
LATTICE_BOUND = 16
INTERP_MAX_OCCURRENCES = 3

# --- RUNTIME ---
DB_FILE = os.environ.get("SIXV_DB_FILE", "sixvertex.db")
LOG_LEVEL = os.environ.get("SIXV_LOG_LEVEL", "WARNING")


def oracle_cap():
    """Edge cap for brute force, re-read so one process can change it per run."""
    return int(os.environ.get("SIXV_ORACLE_CAP", str(ORACLE_CAP)))
