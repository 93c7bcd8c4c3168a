"""Complexity trichotomy for six-vertex signatures and the zero-pattern case taxonomy."""
import logging
from dataclasses import dataclass, field

from algebra.scalar import Scalar
from signatures.membership import is_affine, is_matchgate, is_matchgate_hat, is_product

logger = logging.getLogger(__name__)

PTIME_ALL = "PTimeAll"
PTIME_PLANAR_ONLY = "PTimePlanarOnly"
SHARP_P_HARD_PLANAR = "SharpPHardPlanar"
PTIME = "PTime"
SHARP_P_HARD = "SharpPHard"

# Urutan tetap untuk tampilan
CONDITIONS = ("C1_P", "C1_A", "C2_zero_pairs", "C3_M", "C3_Mhat", "C4i", "C4ii")


@dataclass(frozen=True)
class Verdict:
    planar_class: str
    general_class: str
    witnesses: frozenset
    case_tag: str
    c4ii_exponents: tuple = None          # (alpha, beta, gamma) when C4ii holds
    notes: tuple = field(default_factory=tuple)

    def ordered_witnesses(self):
        return [c for c in CONDITIONS if c in self.witnesses]

    def summary(self):
        return f"{self.planar_class}; case {self.case_tag}"

    def as_lines(self):
        lines = [
            f"planar_class={self.planar_class}",
            f"general_class={self.general_class}",
            f"case={self.case_tag}",
            f"witnesses={','.join(self.ordered_witnesses()) or '-'}",
        ]
        if self.c4ii_exponents is not None:
            alpha, beta, gamma = self.c4ii_exponents
            lines.append(f"c4ii_alpha={alpha}")
            lines.append(f"c4ii_beta={beta}")
            lines.append(f"c4ii_gamma={gamma}")
        return lines


def zero_pairs_condition(f):
    """A zero in each of (a,x), (b,y), (c,z)."""
    return (not f.a or not f.x) and (not f.b or not f.y) and (not f.c or not f.z)


def _zeta_exponent(value):
    return Scalar.coerce(value).root_of_unity_exponent()


def condition_4(f):
    """Return (c4i, c4ii_exponents or None) for signatures with c = z = 0."""
    if f.c or f.z:
        return False, None
    c4i = (f.a * f.x) ** 2 == (f.b * f.y) ** 2
    if not f.a:
        return c4i, None
    ex = _zeta_exponent(f.x / f.a)
    eb = _zeta_exponent(f.b / f.a)
    ey = _zeta_exponent(f.y / f.a)
    if ex is None or eb is None or ey is None or ex % 2:
        return c4i, None
    # b/y in mu_4  <=>  beta and gamma have the same parity
    if (eb - ey) % 2:
        return c4i, None
    return c4i, (ex // 2, eb, ey)


def classify(f):
    """Check all four tractability conditions literally and report every one that holds."""
    general = f.general()
    witnesses = set()
    if is_product(general) is not None:
        witnesses.add("C1_P")
    if is_affine(general) is not None:
        witnesses.add("C1_A")
    if zero_pairs_condition(f):
        witnesses.add("C2_zero_pairs")
    if is_matchgate(f):
        witnesses.add("C3_M")
    if is_matchgate_hat(f):
        witnesses.add("C3_Mhat")
    c4i, c4ii = condition_4(f)
    if c4i:
        witnesses.add("C4i")
    if c4ii is not None:
        witnesses.add("C4ii")

    in_general = bool(witnesses & {"C1_P", "C1_A", "C2_zero_pairs"})
    if in_general:
        planar = PTIME_ALL
    elif witnesses:
        planar = PTIME_PLANAR_ONLY
    else:
        planar = SHARP_P_HARD_PLANAR
    verdict = Verdict(
        planar_class=planar,
        general_class=PTIME if in_general else SHARP_P_HARD,
        witnesses=frozenset(witnesses),
        case_tag=case_of(f),
        c4ii_exponents=c4ii,
    )
    logger.debug("classify %s -> %s %s", f, verdict.summary(), verdict.ordered_witnesses())
    return verdict


def case_of(f):
    """Zero-pattern taxonomy I-IV."""
    pairs = {"outer_ax": (f.a, f.x), "outer_by": (f.b, f.y), "inner": (f.c, f.z)}
    if any(not u and not v for u, v in pairs.values()):
        return "II"
    with_zero = [name for name, (u, v) in pairs.items() if not u or not v]
    if len(with_zero) == 3:
        return "I"
    if len(with_zero) == 2:
        return "III"
    if len(with_zero) == 1:
        return "IV" if with_zero[0] == "inner" else "III"
    return "IV"
