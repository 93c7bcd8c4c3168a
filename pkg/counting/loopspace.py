"""
Planar evaluation for signatures with a zero inner pair (c = z = 0).

The support of such an f forces opposite half-edges at a vertex to carry
different values, so every nonzero term is fixed by one bit per circuit of
the "go straight" walk. The Holant becomes a #CSP over circuits: a binary
table per pair of crossing circuits and a unary table per circuit for its
self-crossings and for degree-2 vertices on it.

Half-edges of a circuit alternate between entering a vertex and leaving it;
with circuit bit s, entering half-edges carry s and leaving ones 1 - s.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

import config
from algebra.scalar import ZERO, ONE
from counting import cspsolve
from counting.oracle import csp_brute
from errors import InvariantViolation, NotInClass, NotTractable, ValidationError
from signatures.signature import (BinarySignature, SixVertexSignature, UnarySignature, index_of,
                                  to_six_vertex)

logger = logging.getLogger(__name__)

INTERSECTION, SELF, BINARY = "intersection", "self", "binary"

# Nilai slot per rotasi r (huruf ke-r) untuk tiap pola bit lingkaran
ENTRY_SLOTS = {(0, 0): "ayxb", (0, 1): "bayx", (1, 1): "xbay", (1, 0): "yxba"}
EXIT_SLOTS = {(0, 0): "bayx", (0, 1): "ayxb", (1, 1): "yxba", (1, 0): "xbay"}
SELF_SLOTS = {0: "ayxb", 1: "xbay"}
# Indeks entri biner (posisi masuk -> (s=0, s=1))
BINARY_ENTRIES = {0: (0b01, 0b10), 1: (0b10, 0b01)}


@dataclass(frozen=True)
class VertexRecord:
    vertex: int
    kind: str
    circuits: tuple           # (i, j) with i < j, or (i,)
    rotation: int             # position of the local x1
    entry: bool = None        # intersections only


@dataclass(frozen=True)
class ExponentProfile:
    k: tuple = (0, 0, 0, 0)   # entry vertices per rotation
    l: tuple = (0, 0, 0, 0)   # exit vertices per rotation
    m: tuple = (0, 0, 0, 0)   # self-intersections per rotation

    def balanced(self):
        return sum(self.k) == sum(self.l)


@dataclass
class CircuitDecomposition:
    instance: object
    circuits: list            # half-edge sequences, entering first
    role: dict                # half-edge -> (circuit, entering)
    records: list

    @property
    def num_circuits(self):
        return len(self.circuits)

    def leader(self, i):
        return self.circuits[i][0]

    def pairs(self):
        grouped = defaultdict(list)
        for record in self.records:
            if record.kind == INTERSECTION:
                grouped[record.circuits].append(record)
        return dict(grouped)

    def self_records(self):
        grouped = defaultdict(list)
        for record in self.records:
            if record.kind != INTERSECTION:
                grouped[record.circuits[0]].append(record)
        return dict(grouped)

    def profile(self, pair):
        k, l = [0] * 4, [0] * 4
        for record in self.pairs().get(pair, []):
            (k if record.entry else l)[record.rotation] += 1
        return ExponentProfile(tuple(k), tuple(l))

    def self_profile(self, i):
        m = [0] * 4
        for record in self.self_records().get(i, []):
            if record.kind == SELF:
                m[record.rotation] += 1
        return ExponentProfile(m=tuple(m))


@dataclass
class InducedCSP:
    num_vars: int
    binary: dict = field(default_factory=dict)     # (i, j) -> BinarySignature g(e_i, e_j)
    unary: dict = field(default_factory=dict)      # i -> UnarySignature

    def constraints(self):
        out = [((i, j), g) for (i, j), g in sorted(self.binary.items())]
        out += [((i,), h) for i, h in sorted(self.unary.items())]
        return out


# ---------------------------------------------------------------
# Dekomposisi
# ---------------------------------------------------------------
def _inner_zero(sig):
    if sig.arity == 2:
        return not sig.entries[0b00] and not sig.entries[0b11]
    if sig.arity != 4:
        return False
    try:
        six = to_six_vertex(sig)
    except NotInClass:
        return False
    return not six.c and not six.z


def check_loop_form(instance):
    """Every label must be a six-vertex signature with c = z = 0, or a binary supported on 01/10."""
    for v in range(instance.num_vertices):
        sig = instance.signature_of(v)
        if not _inner_zero(sig):
            name = instance.labels[v]
            if sig.arity == 4:
                raise NotInClass(f"signature {name!r} at v{v} has a nonzero inner pair (c, z); "
                                 f"circuit evaluation needs c = z = 0")
            raise NotInClass(f"signature {name!r} at v{v} is not supported on the straight patterns")


def decompose(instance, leader="lowest"):
    """Split the edges into circuits; `leader` picks the lowest or highest half-edge as e_i."""
    check_loop_form(instance)
    rotation = instance.map
    role = {}
    circuits = []
    candidates = range(rotation.num_half_edges)
    if leader == "highest":
        candidates = reversed(candidates)
    elif leader != "lowest":
        raise ValidationError(f"unknown leader rule {leader!r}")
    for start in candidates:
        if start in role:
            continue
        index = len(circuits)
        walk, h = [], start
        while True:
            out = rotation.opposite(h)
            if h in role or out in role:
                raise InvariantViolation(f"circuit {index} revisits half-edge h{h}")
            role[h] = (index, True)
            role[out] = (index, False)
            walk.extend((h, out))
            h = rotation.twin[out]
            if h == start:
                break
        circuits.append(tuple(walk))

    records = []
    for v, hs in enumerate(rotation.vertices):
        if len(hs) == 2:
            circuit, _ = role[hs[0]]
            entering_pos = 0 if role[hs[0]][1] else 1
            records.append(VertexRecord(v, BINARY, (circuit,), entering_pos))
            continue
        owners = [role[h] for h in hs]
        if owners[0][0] == owners[1][0]:
            r = next(p for p in range(4) if owners[p][1] and owners[(p + 1) % 4][1])
            records.append(VertexRecord(v, SELF, (owners[0][0],), r))
            continue
        i, j = sorted((owners[0][0], owners[1][0]))
        r = next(p for p in range(4) if owners[p] == (i, True))
        entry = owners[(r + 1) % 4] == (j, True)
        records.append(VertexRecord(v, INTERSECTION, (i, j), r, entry))
    decomposition = CircuitDecomposition(instance, circuits, role, records)
    logger.debug("decompose: %d circuits, %d records", len(circuits), len(records))
    return decomposition


@dataclass(frozen=True)
class AuditReport:
    num_circuits: int
    balance: dict             # (i, j) -> (entries, exits)
    self_intersections: dict  # i -> count

    def as_lines(self):
        lines = [f"circuits={self.num_circuits}"]
        for (i, j), (entries, exits) in sorted(self.balance.items()):
            lines.append(f"pair={i},{j} entry={entries} exit={exits}")
        for i, count in sorted(self.self_intersections.items()):
            lines.append(f"self={i} count={count}")
        return lines


def entry_exit_audit(decomposition):
    """Check that every pair of circuits has as many entry as exit vertices."""
    balance = {}
    for pair in decomposition.pairs():
        profile = decomposition.profile(pair)
        balance[pair] = (sum(profile.k), sum(profile.l))
        if not profile.balanced():
            raise InvariantViolation(f"circuits {pair}: {sum(profile.k)} entries vs {sum(profile.l)} exits")
    selfs = {i: sum(decomposition.self_profile(i).m) for i in decomposition.self_records()}
    return AuditReport(decomposition.num_circuits, balance, {i: c for i, c in selfs.items() if c})


# ---------------------------------------------------------------
# Tabel #CSP
# ---------------------------------------------------------------
def _local_value(instance, decomposition, v, bits):
    """f_v at the circuit bits `bits` (dict circuit -> bit)."""
    hs = instance.map.vertices[v]
    pattern = []
    for h in hs:
        circuit, entering = decomposition.role[h]
        pattern.append(bits[circuit] if entering else 1 - bits[circuit])
    return instance.signature_of(v).entries[index_of(pattern)]


def _direct_tables(decomposition):
    instance = decomposition.instance
    binary, unary = {}, {}
    for (i, j), records in decomposition.pairs().items():
        entries = []
        for b, bp in product((0, 1), repeat=2):
            acc = ONE
            for record in records:
                acc = acc * _local_value(instance, decomposition, record.vertex, {i: b, j: bp})
            entries.append(acc)
        binary[(i, j)] = BinarySignature(tuple(entries))
    for i, records in decomposition.self_records().items():
        entries = []
        for b in (0, 1):
            acc = ONE
            for record in records:
                acc = acc * _local_value(instance, decomposition, record.vertex, {i: b})
            entries.append(acc)
        unary[i] = UnarySignature(tuple(entries))
    return binary, unary


def _slot(sig, letter):
    return getattr(sig, letter)


def _profile_tables(decomposition):
    """Same tables from the rotation/entry counts alone, grouped per signature label."""
    instance = decomposition.instance
    counts = defaultdict(int)
    for record in decomposition.records:
        counts[(record.circuits, record.kind, record.entry, record.rotation, instance.labels[record.vertex])] += 1
    binary, unary = {}, {}
    for (circuits, kind, entry, r, label), n in counts.items():
        sig = instance.signatures[label]
        if kind == INTERSECTION:
            six = to_six_vertex(sig)
            table = ENTRY_SLOTS if entry else EXIT_SLOTS
            old = binary.get(circuits, (ONE, ONE, ONE, ONE))
            binary[circuits] = tuple(acc * _slot(six, table[bits][r]) ** n
                                     for acc, bits in zip(old, product((0, 1), repeat=2)))
        elif kind == SELF:
            six = to_six_vertex(sig)
            old = unary.get(circuits[0], (ONE, ONE))
            unary[circuits[0]] = tuple(acc * _slot(six, SELF_SLOTS[b][r]) ** n for acc, b in zip(old, (0, 1)))
        else:
            old = unary.get(circuits[0], (ONE, ONE))
            unary[circuits[0]] = tuple(acc * sig.entries[BINARY_ENTRIES[r][b]] ** n
                                       for acc, b in zip(old, (0, 1)))
    return ({p: BinarySignature(t) for p, t in binary.items()},
            {i: UnarySignature(t) for i, t in unary.items()})


def induced_csp(decomposition, f=None):
    """
    The circuit #CSP, built directly and from exponent profiles; the two must agree.

    With `f` given, every 4-valent vertex is read as carrying f.
    """
    if f is not None:
        decomposition = CircuitDecomposition(decomposition.instance.with_signature(f),
                                             decomposition.circuits, decomposition.role,
                                             decomposition.records)
        check_loop_form(decomposition.instance)
    direct_binary, direct_unary = _direct_tables(decomposition)
    profile_binary, profile_unary = _profile_tables(decomposition)
    if direct_binary != profile_binary or direct_unary != profile_unary:
        raise InvariantViolation("direct and exponent-profile circuit tables disagree")
    return InducedCSP(decomposition.num_circuits, direct_binary, direct_unary)


def solve_csp(csp):
    """(value, method) using the product or affine solver, brute force only for small k."""
    constraints = csp.constraints()
    if cspsolve.all_product(constraints):
        return cspsolve.product_eval(csp.num_vars, constraints), "product"
    if cspsolve.all_affine(constraints):
        return cspsolve.affine_eval(csp.num_vars, constraints), "affine"
    if csp.num_vars <= config.CSP_BRUTE_CAP:
        logger.warning("circuit tables are neither product nor affine; brute force over %d circuits",
                       csp.num_vars)
        return csp_brute(csp.num_vars, constraints), "brute"
    raise NotTractable(f"circuit tables fail both P and A membership and k={csp.num_vars} "
                       f"exceeds the brute-force cap {config.CSP_BRUTE_CAP}")


def evaluate(instance, f=None, leader="lowest"):
    """Holant of an instance whose 4-valent labels have c = z = 0."""
    if f is not None:
        if isinstance(f, SixVertexSignature) and (f.c or f.z):
            raise NotInClass(f"loopspace needs c = z = 0, got c={f.c}, z={f.z}")
        instance = instance.with_signature(f)
    if instance.num_vertices == 0:
        return ONE
    decomposition = decompose(instance, leader=leader)
    entry_exit_audit(decomposition)
    csp = induced_csp(decomposition)
    value, method = solve_csp(csp)
    logger.debug("loopspace: k=%d circuits, %s solver -> %s", csp.num_vars, method, value)
    return value
