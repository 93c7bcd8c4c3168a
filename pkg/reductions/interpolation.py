"""
Polynomial interpolation harnesses.

Each harness replaces the m occurrences of a target signature in an instance
by gadgets built from f, asks the brute-force oracle for the Holant of every
such instance, and solves a Vandermonde-type system for the stratified sums.
The recovered value is compared with the oracle on the instance itself.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from math import comb

import config
from algebra import linalg
from algebra.scalar import ONE, ZERO, Scalar
from counting.oracle import holant_brute
from errors import LatticeRankError, SingularMatrix, ValidationError
from planar.gadget import binary_chain_gadget, chain_gadget, substitute_gadget
from signatures.signature import (CHI1, CHI2, N_MATRIX, SixVertexSignature, from_matrix,
                                  signature_matrix, to_six_vertex)

logger = logging.getLogger(__name__)

TARGETS = {"chi1": CHI1, "chi2": CHI2}
# Sasaran Jordan: M(g) dalam anti-diagonal satu
JORDAN_TARGET = SixVertexSignature(0, 0, 1, 0, 0, 1)
ROOT_OF_UNITY, DISTINCT, DEFECTIVE = "root-of-unity", "distinct", "defective"
MAX_SCALAR_POWER = 30


@dataclass
class InterpolationRun:
    target: str
    occurrences: int
    nodes: list = field(default_factory=list)
    queries: list = field(default_factory=list)
    coefficients: list = field(default_factory=list)
    recovered: Scalar = ZERO
    direct: Scalar = None
    case: str = None

    @property
    def matches(self):
        return self.direct is None or self.recovered == self.direct

    def as_lines(self):
        lines = [f"target={self.target}", f"occurrences={self.occurrences}"]
        if self.case:
            lines.append(f"case={self.case}")
        for s, value in enumerate(self.queries):
            lines.append(f"query[{s}]={value}")
        lines.append(f"recovered={self.recovered}")
        if self.direct is not None:
            lines.append(f"direct={self.direct}")
            lines.append(f"match={'yes' if self.matches else 'no'}")
        return lines


# ---------------------------------------------------------------
# Helper
# ---------------------------------------------------------------
def chain(f, copies):
    """Signature of s copies of f joined by double disequality: M(f) (N M(f))^(s-1)."""
    if copies < 1:
        raise ValidationError("a chain needs at least one copy")
    step = linalg.matmul(N_MATRIX, signature_matrix(f))
    matrix = linalg.matmul(signature_matrix(f), linalg.matrix_power(step, copies - 1))
    return from_matrix(matrix)


def _default_oracle(jobs):
    return lambda instance: holant_brute(instance, jobs=jobs)


def _occurrences(instance, target, label=None):
    if label is not None:
        if label not in instance.signatures:
            raise ValidationError(f"instance has no signature named {label!r}")
        found = [v for v, name in enumerate(instance.labels) if name == label]
    else:
        found = [v for v in range(instance.num_vertices) if instance.signature_of(v) == target]
    if len(found) > config.INTERP_MAX_OCCURRENCES:
        raise ValidationError(f"{len(found)} occurrences of the target exceed the limit "
                              f"{config.INTERP_MAX_OCCURRENCES}")
    return found


def _free_name(instance, sig, base):
    """A label for sig that does not clash with the instance's signatures."""
    for name, other in instance.signatures.items():
        if other == sig:
            return name
    name = base
    while name in instance.signatures:
        name += "_"
    return name


def _replace(instance, vertices, gadget):
    for v in vertices:
        instance = substitute_gadget(instance, v, gadget)
    return instance


def _relabel(instance, vertices, sig, name):
    labels = list(instance.labels)
    for v in vertices:
        labels[v] = name
    signatures = dict(instance.signatures)
    signatures[name] = sig
    used = set(labels)
    return type(instance)(instance.map, labels, {k: s for k, s in signatures.items() if k in used})


# ---------------------------------------------------------------
# chi1 / chi2 dari rantai ganjil
# ---------------------------------------------------------------
def interpolate_chi(instance, f, which="chi1", label=None, jobs=1, oracle=None, verify=True):
    """
    Holant of an instance using chi1 or chi2 from oracle calls on f alone.

    f must have M(f) = a [[0,0,0,1],[0,r,0,0],[0,0,r,0],[e,0,0,0]] with
    e = 1 for chi1 and e = -1 for chi2, and r not a root of unity. Chains of
    2s + 1 copies stand in for chi, s = 0..m.
    """
    if which not in TARGETS:
        raise ValidationError(f"unknown target {which!r}; use chi1 or chi2")
    f = to_six_vertex(f)
    sign = 1 if which == "chi1" else -1
    if f.c or f.z or not f.a or not f.b or f.b != f.y or f.x != sign * f.a:
        raise ValidationError(f"{which} interpolation needs c = z = 0, b = y != 0 and x = {sign:+d} a != 0")
    ratio = f.b / f.a
    if ratio.is_root_of_unity() is not None:
        raise ValidationError(f"ratio b/a = {ratio} is a root of unity; the Vandermonde system is singular")
    oracle = oracle or _default_oracle(jobs)
    target = TARGETS[which]
    spots = _occurrences(instance, target, label)
    m = len(spots)
    name = _free_name(instance, f, "f")

    run = InterpolationRun(which, m)
    for s in range(m + 1):
        copies = 2 * s + 1
        value = oracle(_replace(instance, spots, chain_gadget(f, copies, name)))
        run.queries.append(value)
        run.nodes.append(ratio ** copies)
    normalized = [q / f.a ** ((2 * s + 1) * m) for s, q in enumerate(run.queries)]
    run.coefficients = list(linalg.vandermonde_solve(run.nodes, normalized))
    run.recovered = sum(run.coefficients, ZERO)
    if verify:
        run.direct = oracle(instance)
    logger.debug("interpolate_chi(%s): m=%d recovered=%s", which, m, run.recovered)
    return run


# ---------------------------------------------------------------
# Biner (0, u, v, 0)
# ---------------------------------------------------------------
def _binary_form(g, what):
    if g.arity != 2 or g.entries[0] or g.entries[3]:
        raise ValidationError(f"{what} must have the form (0, u, v, 0)")
    return g.entries[1], g.entries[2]


def interpolate_binary(instance, g, label, jobs=1, oracle=None, verify=True):
    """
    Holant of an instance whose `label` vertices carry (0, u', v', 0), using chains of g.

    A chain of s copies of g = (0, u, v, 0) has signature (0, u^s, v^s, 0);
    the nodes are t^s for t = v/u and s = 1..m+1.
    """
    u, v = _binary_form(g, "g")
    if not u:
        raise ValidationError("g needs u != 0")
    t = v / u
    if not t or t.is_root_of_unity() is not None:
        raise ValidationError(f"t = {t} must be nonzero and not a root of unity")
    spots = _occurrences(instance, None, label)
    target = instance.signatures[label]
    u_t, v_t = _binary_form(target, "target")
    oracle = oracle or _default_oracle(jobs)
    m = len(spots)
    name = _free_name(instance, g, "g")

    run = InterpolationRun(label, m)
    for s in range(1, m + 2):
        run.queries.append(oracle(_replace(instance, spots, binary_chain_gadget(g, s, name))))
        run.nodes.append(t ** s)
    normalized = [q / u ** (s * m) for s, q in enumerate(run.queries, start=1)]
    run.coefficients = list(linalg.vandermonde_solve(run.nodes, normalized))
    run.recovered = sum((a_j * u_t ** (m - j) * v_t ** j for j, a_j in enumerate(run.coefficients)), ZERO)
    if verify:
        run.direct = oracle(instance)
    logger.debug("interpolate_binary: t=%s m=%d recovered=%s", t, m, run.recovered)
    return run


# ---------------------------------------------------------------
# Jordan: dalam M(f) penuh, luar nol
# ---------------------------------------------------------------
def _inner_step(f):
    """N_In M_In(f) = [[z, y], [b, c]]."""
    return linalg.as_matrix([[f.z, f.y], [f.b, f.c]])


def jordan_case(f):
    """(case, n) where n is the least power making N_In M_In(f) scalar, if any."""
    f = to_six_vertex(f)
    step = _inner_step(f)
    delta = linalg.det(step)
    if not delta:
        raise SingularMatrix("inner matrix of f is singular")
    power = step
    for n in range(1, MAX_SCALAR_POWER + 1):
        if linalg.is_scalar_matrix(power):
            return ROOT_OF_UNITY, n
        power = linalg.matmul(power, step)
    trace = f.z + f.c
    if trace * trace == 4 * delta:
        return DEFECTIVE, None
    return DISTINCT, None


def chain_coefficients(f, copies):
    """(alpha_s, beta_s) with inner(f_s) = alpha_s inner(g) + beta_s inner(f)."""
    trace, delta = f.z + f.c, f.z * f.c - f.y * f.b
    alpha, beta = ZERO, ONE
    for _ in range(copies - 1):
        alpha, beta = -delta * beta, alpha + trace * beta
    return alpha, beta


def jordan_interp(instance, f, label=None, jobs=1, oracle=None, verify=True):
    """
    Holant of an instance using the inner-antidiagonal g, from chains of f.

    By Cayley-Hamilton each chain is f_s = alpha_s g + beta_s f, so the
    oracle values are homogeneous polynomials in (alpha_s, beta_s) whose
    pure-alpha coefficient is the answer. When a power of the inner matrix
    is scalar, that chain is a multiple of g and one query suffices.
    """
    f = to_six_vertex(f)
    if f.a or f.x:
        raise ValidationError("jordan_interp needs a zero outer pair (a = x = 0)")
    case, n = jordan_case(f)
    oracle = oracle or _default_oracle(jobs)
    spots = _occurrences(instance, JORDAN_TARGET, label)
    m = len(spots)
    name = _free_name(instance, f, "f")
    run = InterpolationRun("g", m, case=case)

    if case == ROOT_OF_UNITY:
        alpha, beta = chain_coefficients(f, n)
        if beta:
            raise SingularMatrix(f"chain of {n} copies is not a multiple of g")
        run.queries.append(oracle(_replace(instance, spots, chain_gadget(f, n, name))))
        run.nodes.append(alpha)
        run.recovered = run.queries[0] / alpha ** m
    else:
        rows = []
        for s in range(1, m + 2):
            alpha, beta = chain_coefficients(f, s)
            rows.append([alpha ** (m - j) * beta ** j for j in range(m + 1)])
            run.nodes.append((alpha, beta))
            run.queries.append(oracle(_replace(instance, spots, chain_gadget(f, s, name))))
        run.coefficients = list(linalg.solve(linalg.as_matrix(rows), run.queries))
        run.recovered = run.coefficients[0]
    if verify:
        run.direct = oracle(_relabel(instance, spots, JORDAN_TARGET, _free_name(instance, JORDAN_TARGET, "g")))
    logger.debug("jordan_interp: case=%s m=%d recovered=%s", case, m, run.recovered)
    return run


# ---------------------------------------------------------------
# Lattice
# ---------------------------------------------------------------
@dataclass(frozen=True)
class LatticeSpec:
    alpha: Scalar
    beta: Scalar
    basis: tuple = None       # (s, t), or None for the trivial lattice
    bound: int = config.LATTICE_BOUND

    def holds(self, phi, psi):
        if self.basis is None:
            return True
        s, t = self.basis
        return phi ** s * psi ** t == ONE


def _normalize(vector):
    s, t = vector
    if t < 0 or (t == 0 and s < 0):
        return -s, -t
    return s, t


def find_lattice_basis(alpha, beta, bound=None):
    """
    LatticeSpec for {(j, k) : alpha^j beta^k = 1}, searched over |j|, |k| <= bound.

    A rank-one lattice is reported by its generator with t >= 0 (s > 0 when
    t = 0); two independent relations raise LatticeRankError.
    """
    bound = config.LATTICE_BOUND if bound is None else bound
    alpha, beta = Scalar.coerce(alpha), Scalar.coerce(beta)
    if not alpha or not beta:
        raise ValidationError("alpha and beta must be nonzero")
    a_pow = {j: alpha ** j for j in range(-bound, bound + 1)}
    b_pow = {k: beta ** k for k in range(-bound, bound + 1)}
    found = [(j, k) for j, k in product(range(-bound, bound + 1), repeat=2)
             if (j, k) != (0, 0) and a_pow[j] * b_pow[k] == ONE]
    if not found:
        logger.debug("lattice: no relation within bound %d", bound)
        return LatticeSpec(alpha, beta, None, bound)
    shortest = min(found, key=lambda v: (abs(v[0]) + abs(v[1]), v))
    for j, k in found:
        if j * shortest[1] - k * shortest[0]:
            raise LatticeRankError(f"relations {shortest} and {(j, k)} are independent; "
                                   f"alpha and beta are both roots of unity")
    return LatticeSpec(alpha, beta, _normalize(shortest), bound)


def lattice_queries(alpha, beta, unknowns, m):
    """N_l = sum (alpha^j beta^k)^l x_{j,k} for l = 1..C(m+2, 2)."""
    count = comb(m + 2, 2)
    values = []
    for ell in range(1, count + 1):
        total = ZERO
        for (j, k), x in unknowns.items():
            total = total + (alpha ** j * beta ** k) ** ell * x
        values.append(total)
    return values


def lattice_solve(spec, values, phi, psi, m):
    """
    sum phi^j psi^k x_{j,k} over j, k >= 0, j + k <= m, from the queries N_l.

    Unknowns sharing a node alpha^j beta^k differ by a lattice vector, so
    phi^j psi^k is constant on each group and the grouped Vandermonde system
    in the distinct nodes is enough.
    """
    phi, psi = Scalar.coerce(phi), Scalar.coerce(psi)
    if not spec.holds(phi, psi):
        raise ValidationError(f"phi^s psi^t != 1 for basis {spec.basis}")
    if len(values) < comb(m + 2, 2):
        raise ValidationError(f"need {comb(m + 2, 2)} query values, got {len(values)}")
    groups = {}
    for j in range(m + 1):
        for k in range(m + 1 - j):
            node = spec.alpha ** j * spec.beta ** k
            weight = phi ** j * psi ** k
            if node in groups and groups[node] != weight:
                raise ValidationError(f"phi, psi do not respect the relation at (j, k) = ({j}, {k})")
            groups.setdefault(node, weight)
    nodes = list(groups)
    # N_l = sum_mu mu^l y_mu, l = 1..|nodes|
    matrix = linalg.as_matrix([[mu ** ell for mu in nodes] for ell in range(1, len(nodes) + 1)])
    grouped = linalg.solve(matrix, values[:len(nodes)])
    result = sum((groups[mu] * y for mu, y in zip(nodes, grouped)), ZERO)
    logger.debug("lattice_solve: %d groups, basis %s", len(nodes), spec.basis)
    return result
