"""
Compilers from counting CSPs to planar Holant(!=2 | f) instances.

compile_plcsp turns a planar #CSP over binary tables g into an instance over
zero-outer-pair six-vertex signatures: every variable becomes a cycle through
its constraints. compile_csp_inner handles an arbitrary (non-planar) #CSP over
the two circuit tables g1_f, g2_f of an f with c = z = 0; variables become
closed strands around an annulus and unwanted crossings are padded with chi.
"""
import logging
from collections import defaultdict

import networkx as nx

from algebra.scalar import ONE
from counting import loopspace
from errors import InvariantViolation, NonPlanarError, NotInClass, ValidationError
from planar.instance import PlanarInstance
from planar.rotation_map import RotationMap
from signatures.signature import (CHI1, CHI2, NEQ2, BinarySignature, SixVertexSignature, rotate,
                                  to_six_vertex)

logger = logging.getLogger(__name__)

PADDINGS = {"chi1": CHI1, "chi2": CHI2}


# ---------------------------------------------------------------
# f~_In dan lift
# ---------------------------------------------------------------
def tilde_in(f):
    """Binary table with matrix M_In(f) [[0,1],[1,0]], i.e. (c, b, y, z)."""
    f = to_six_vertex(f)
    return BinarySignature.of(f.c, f.b, f.y, f.z)


def lift(g):
    """Zero-outer-pair six-vertex signature f with tilde_in(f) == g."""
    g00, g01, g10, g11 = g.entries
    return SixVertexSignature(0, g01, g00, 0, g10, g11)


def _as_lifted(sig):
    if isinstance(sig, SixVertexSignature) or sig.arity == 4:
        f = to_six_vertex(sig)
        if f.a or f.x:
            raise NotInClass(f"constraint signature {f} needs a zero outer pair (a = x = 0)")
        return f
    if sig.arity != 2:
        raise ValidationError(f"planar #CSP constraints must be binary, got arity {sig.arity}")
    return lift(sig)


def _check_scopes(num_vars, constraints, arity=2):
    for scope, _ in constraints:
        if len(scope) != arity:
            raise ValidationError(f"scope {scope} must have {arity} variables")
        if any(not 0 <= u < num_vars for u in scope):
            raise ValidationError(f"scope {scope} out of range for {num_vars} variables")


class _Names:
    """Stable label names for the signatures placed on an instance."""

    def __init__(self, prefix):
        self.prefix = prefix
        self.by_sig = {}

    def name(self, sig):
        if sig not in self.by_sig:
            self.by_sig[sig] = f"{self.prefix}{len(self.by_sig)}"
        return self.by_sig[sig]

    def signatures(self):
        return {name: sig for sig, name in self.by_sig.items()}


# ---------------------------------------------------------------
# Pl-#CSP -> Pl-Holant
# ---------------------------------------------------------------
def _constraint_graph(num_vars, constraints):
    graph = nx.Graph()
    graph.add_nodes_from(("v", u) for u in range(num_vars))
    for k, (scope, _) in enumerate(constraints):
        u, w = scope
        if u != w:
            graph.add_edge(("v", u), ("c", k))
            graph.add_edge(("v", w), ("c", k))
    return graph


def _plcsp_instance(num_vars, constraints, lifted, embedding, reverse):
    """
    Constraint k is vertex k with half-edges 4k..4k+3.

    For scope (u, w), u != w: [p_u, n_u, p_w, n_w]. For (w, w): [p, l1, l2, n]
    with l1, l2 joined by a loop. Along each variable cycle, n of one
    occurrence is joined to p of the next.
    """
    twin = [None] * (4 * len(constraints))
    vertices = [tuple(range(4 * k, 4 * k + 4)) for k in range(len(constraints))]
    names = _Names("f")
    labels = [names.name(f) for f in lifted]

    occurrences = defaultdict(list)
    loops = defaultdict(list)
    for k, (scope, _) in enumerate(constraints):
        u, w = scope
        if u == w:
            twin[4 * k + 1], twin[4 * k + 2] = 4 * k + 2, 4 * k + 1
            loops[u].append((4 * k, 4 * k + 3))
    for u in range(num_vars):
        node = ("v", u)
        ring = []
        if node in embedding and embedding.degree(node):
            for nbr in embedding.neighbors_cw_order(node):
                k = nbr[1]
                first = constraints[k][0][0] == u
                ring.append((4 * k, 4 * k + 1) if first else (4 * k + 2, 4 * k + 3))
        if reverse:
            ring.reverse()
        occurrences[u] = ring + loops[u]

    neq_label = None
    for u in range(num_vars):
        ring = occurrences[u]
        if not ring:
            # Variabel bebas: simpul !=2 dengan loop
            h = len(twin)
            twin.extend([h + 1, h])
            vertices.append((h, h + 1))
            neq_label = "neq"
            labels.append(neq_label)
            continue
        for q, (_, n_half) in enumerate(ring):
            p_next = ring[(q + 1) % len(ring)][0]
            twin[n_half], twin[p_next] = p_next, n_half
    signatures = names.signatures()
    if neq_label:
        signatures[neq_label] = NEQ2
    return PlanarInstance(RotationMap(vertices, twin), labels, signatures)


def compile_plcsp(num_vars, constraints):
    """
    Planar Holant(!=2 | F) instance with the value of a planar #CSP.

    :param constraints: list of (scope, sig) with a two-variable scope (repeats
        allowed) and sig either the binary table g or a six-vertex f with
        a = x = 0 (read as tilde_in(f)).
    """
    _check_scopes(num_vars, constraints)
    lifted = [_as_lifted(sig) for _, sig in constraints]
    graph = _constraint_graph(num_vars, constraints)
    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise NonPlanarError("constraint graph of the #CSP is not planar")

    for reverse in (False, True):
        instance = _plcsp_instance(num_vars, constraints, lifted, embedding, reverse)
        instance.map.check()
        if instance.map.is_planar():
            logger.debug("compile_plcsp: %d variables, %d constraints -> %d edges",
                         num_vars, len(constraints), instance.num_edges)
            return instance.validate()
    raise InvariantViolation("variable cycles do not close up into a plane map")


# ---------------------------------------------------------------
# #CSP(g1_f, g2_f) -> Pl-Holant dengan padding chi
# ---------------------------------------------------------------
def g1_of(f):
    """[[a^2, by], [by, x^2]]: one entry and one exit vertex at rotations 0 and 1."""
    f = to_six_vertex(f)
    return BinarySignature.of(f.a * f.a, f.b * f.y, f.b * f.y, f.x * f.x)


def g2_of(f):
    """[[ax, b^2], [y^2, ax]]: entry at rotation 0, exit at rotation 3."""
    f = to_six_vertex(f)
    return BinarySignature.of(f.a * f.x, f.b * f.b, f.y * f.y, f.a * f.x)


def check_inner_preconditions(f):
    f = to_six_vertex(f)
    if f.c or f.z:
        raise NotInClass(f"circuit compilation needs c = z = 0, got c={f.c}, z={f.z}")
    a, b, x, y = f.a, f.b, f.x, f.y
    if not a or a * a != x * x:
        raise ValidationError("need a^2 = x^2 != 0")
    if not b or b * b != y * y:
        raise ValidationError("need b^2 = y^2 != 0")
    if (b * a.inv()) ** 8 == ONE:
        raise ValidationError("need (b/a)^8 != 1")
    return f


class _Annulus:
    """
    Closed strands around an annulus, one per variable, drawn left to right.

    Position p is a track; a crossing swaps the strands on tracks p and p + 1.
    A crossing vertex lists [A_out, B_in, A_in, B_out] ccw (A starts on the
    lower track); a kink lists [out, l1, l2, in] with the loop l1-l2 above.
    """

    def __init__(self, count):
        self.vertices = []
        self.twin = []
        self.track = list(range(count))
        self.first_in = [None] * count
        self.last_out = [None] * count
        self.kinks = {}           # vertex -> (strand, rho)

    def _fresh(self, n):
        start = len(self.twin)
        self.twin.extend([None] * n)
        return list(range(start, start + n))

    def _join(self, h, t):
        self.twin[h], self.twin[t] = t, h

    def _pass(self, strand, h_in, h_out):
        if self.last_out[strand] is None:
            self.first_in[strand] = h_in
        else:
            self._join(self.last_out[strand], h_in)
        self.last_out[strand] = h_out

    def kink(self, strand, rho):
        out, l1, l2, inn = self._fresh(4)
        self._join(l1, l2)
        self.kinks[len(self.vertices)] = (strand, rho)
        self.vertices.append((out, l1, l2, inn))
        self._pass(strand, inn, out)

    def cross(self, p):
        lower, upper = self.track[p], self.track[p + 1]
        a_out, b_in, a_in, b_out = self._fresh(4)
        self.vertices.append((a_out, b_in, a_in, b_out))
        self._pass(lower, a_in, a_out)
        self._pass(upper, b_in, b_out)
        self.track[p], self.track[p + 1] = upper, lower

    def weave(self, u, w, times):
        """Bring strand w next to u, cross them `times` times, take w back."""
        if times == 0:
            return
        start, target = self.track.index(w), self.track.index(u) + 1
        for p in range(start - 1, target - 1, -1):
            self.cross(p)
        for _ in range(times):
            self.cross(target - 1)
        for p in range(target, start):
            self.cross(p)

    def close(self):
        free = []
        for strand, out in enumerate(self.last_out):
            if out is None:
                h, t = self._fresh(2)
                self._join(h, t)
                free.append(len(self.vertices))
                self.vertices.append((h, t))
            else:
                self._join(out, self.first_in[strand])
        if self.track != sorted(self.track):
            raise InvariantViolation("strands did not return to their tracks")
        return RotationMap(self.vertices, self.twin), free


def _sort_constraints(num_vars, constraints, g1, g2):
    """Per unordered pair the list of (kind, scope); per variable the kink rotations."""
    pairs = defaultdict(list)
    kinks = defaultdict(list)
    for scope, sig in constraints:
        u, w = scope
        if sig == g1:
            kind = "g1"
        elif sig == g2:
            kind = "g2"
        elif sig == g2.transposed():
            kind, scope = "g2", (w, u)
        else:
            raise ValidationError(f"constraint {sig.literal()} on {scope} is neither g1_f nor g2_f")
        if u == w:
            kinks[u].extend((0, 0) if kind == "g1" else (0, 2))
        else:
            pairs[(min(u, w), max(u, w))].append((kind, scope))
    return pairs, kinks


def compile_csp_inner(num_vars, constraints, f, padding="chi1"):
    """
    Planar Holant(!=2 | f, chi) instance with the value of a #CSP over g1_f, g2_f.

    Every pair of strands that shares n constraints crosses 2n times; strands
    passing over each other on the way cross twice more, once entering and
    once leaving, and those crossings carry the padding signature.

    :param constraints: list of (scope, sig), sig one of g1_of(f), g2_of(f)
        or its transpose; scope (w, w) is allowed.
    """
    f = check_inner_preconditions(f)
    if padding not in PADDINGS:
        raise ValidationError(f"unknown padding {padding!r}; use chi1 or chi2")
    _check_scopes(num_vars, constraints)
    pairs, kinks = _sort_constraints(num_vars, constraints, g1_of(f), g2_of(f))

    annulus = _Annulus(num_vars)
    for u in range(num_vars):
        for rho in kinks[u]:
            annulus.kink(u, rho)
    for (u, w), items in sorted(pairs.items()):
        annulus.weave(u, w, 2 * len(items))
    rotation, free = annulus.close()
    if rotation.num_vertices == 0:
        return PlanarInstance(rotation, [], {})
    if not rotation.is_planar():
        raise InvariantViolation("annulus drawing is not a plane map")

    # Label sementara chi1 untuk membaca sirkuit
    labels = ["neq" if v in free else "chi1" for v in range(rotation.num_vertices)]
    draft = PlanarInstance(rotation, labels, {"neq": NEQ2, "chi1": CHI1})
    decomposition = loopspace.decompose(draft)
    circuit_of = {u: decomposition.role[annulus.first_in[u]][0]
                  for u in range(num_vars) if annulus.first_in[u] is not None}

    chi = PADDINGS[padding]
    names = _Names("s")
    by_vertex = {}

    def place(record, form, rho):
        by_vertex[record.vertex] = names.name(rotate(form, (rho - record.rotation) % 4))

    wanted = defaultdict(lambda: [0, 0, 0])    # (i, j) -> [s, t, t']
    for (u, w), items in pairs.items():
        for kind, (p, q) in items:
            ci, cj = circuit_of[p], circuit_of[q]
            key = (min(ci, cj), max(ci, cj))
            if kind == "g1":
                wanted[key][0] += 1
            else:
                wanted[key][1 if ci < cj else 2] += 1

    for pair, records in decomposition.pairs().items():
        s, t, tp = wanted.get(pair, (0, 0, 0))
        entries = sorted((r for r in records if r.entry), key=lambda r: r.vertex)
        exits = sorted((r for r in records if not r.entry), key=lambda r: r.vertex)
        if len(entries) != len(exits) or len(entries) < s + t + tp:
            raise InvariantViolation(f"circuits {pair}: {len(entries)} entries, {len(exits)} exits "
                                     f"for {s + t + tp} constraints")
        entry_rhos = [0] * (s + t) + [2] * tp
        exit_rhos = [1] * (s + tp) + [3] * t
        for n, record in enumerate(entries):
            if n < len(entry_rhos):
                place(record, f, entry_rhos[n])
            else:
                place(record, chi, 0)
        for n, record in enumerate(exits):
            if n < len(exit_rhos):
                place(record, f, exit_rhos[n])
            else:
                place(record, chi, 1)
    for records in decomposition.self_records().values():
        for record in records:
            # Simpul !=2 dari variabel bebas bukan kink
            if record.vertex in free:
                continue
            _, rho = annulus.kinks[record.vertex]
            place(record, f, rho)

    final = ["neq" if v in free else by_vertex[v] for v in range(rotation.num_vertices)]
    signatures = names.signatures()
    if free:
        signatures["neq"] = NEQ2
    instance = PlanarInstance(rotation, final, signatures).validate()
    logger.debug("compile_csp_inner: %d variables, %d constraints -> %d vertices (%s padding)",
                 num_vars, len(constraints), instance.num_vertices, padding)
    return instance
