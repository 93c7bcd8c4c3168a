"""
Polynomial-time #CSP for affine and product-type constraint sets.

Constraints are (scope, signature) pairs over variables 0..n-1, the same
shape csp_brute takes. Scopes may repeat a variable.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from algebra.scalar import Scalar, ZERO, ONE, I
from errors import InvariantViolation, NotInClass
from signatures.membership import POWERS_OF_I, AffineWitness, is_affine, is_product, power_of_i_exponent

logger = logging.getLogger(__name__)

ONE_PLUS_I = ONE + I
ONE_MINUS_I = ONE - I


def _pair(i, j):
    return (i, j) if i < j else (j, i)


# ---------------------------------------------------------------
# Agregat afin
# ---------------------------------------------------------------
@dataclass
class AffineAggregate:
    """
    prefactor * [A x = r] * i^Q(x), Q = constant + sum linear_k x_k + sum cross_ij x_i x_j (mod 4).

    Equations are (bitmask over variables, rhs). Cross coefficients are kept
    as their Z4 value and must stay even.
    """
    num_vars: int
    equations: list = field(default_factory=list)
    constant: int = 0
    linear: dict = field(default_factory=dict)
    cross: dict = field(default_factory=dict)
    prefactor: Scalar = ONE

    def add_linear(self, var, coeff):
        value = (self.linear.get(var, 0) + coeff) % 4
        if value:
            self.linear[var] = value
        else:
            self.linear.pop(var, None)

    def add_cross(self, i, j, coeff):
        if i == j:
            # x^2 = x untuk variabel boolean
            self.add_linear(i, coeff)
            return
        key = _pair(i, j)
        value = (self.cross.get(key, 0) + coeff) % 4
        if value:
            self.cross[key] = value
        else:
            self.cross.pop(key, None)

    def absorb(self, scope, witness):
        """Add one constraint's AffineWitness with local variable k mapped to scope[k]."""
        self.prefactor = self.prefactor * witness.lam
        for mask_bits, rhs in witness.equations:
            mask = 0
            for k, bit in enumerate(mask_bits):
                if bit:
                    mask ^= 1 << scope[k]
            self.equations.append((mask, rhs))
        for k, a in enumerate(witness.linear):
            if a:
                self.add_linear(scope[k], a)
        for (i, j), b in witness.cross:
            if b:
                self.add_cross(scope[i], scope[j], 2 * b)

    def check_even(self):
        odd = [key for key, value in self.cross.items() if value % 2]
        if odd:
            raise InvariantViolation(f"odd cross coefficient on {odd[0]}")

    def value(self, bits):
        """Direct evaluation at one assignment (used by tests)."""
        for mask, rhs in self.equations:
            if sum(bits[k] for k in range(self.num_vars) if mask >> k & 1) % 2 != rhs:
                return ZERO
        q = self.constant
        q += sum(a * bits[k] for k, a in self.linear.items())
        q += sum(c * bits[i] * bits[j] for (i, j), c in self.cross.items())
        return self.prefactor * POWERS_OF_I[q % 4]

    # --- Substitusi x_p = rhs XOR (xor of `others`) ---
    def substitute(self, p, rhs, others):
        others = [y for y in others if y != p]
        a = self.linear.pop(p, 0)
        if a:
            # a * (r + (1-2r) * (sum y - 2 sum y_i y_j))
            self.constant = (self.constant + a * rhs) % 4
            s = a * (1 - 2 * rhs)
            for y in others:
                self.add_linear(y, s)
            for y1, y2 in combinations(others, 2):
                self.add_cross(y1, y2, -2 * s)
        for key in [key for key in self.cross if p in key]:
            coeff = self.cross.pop(key)
            j = key[0] if key[1] == p else key[1]
            # Koefisien genap: 2b * XOR = 2b * (r + sum y) mod 4
            if rhs:
                self.add_linear(j, coeff)
            for y in others:
                self.add_cross(y, j, coeff)
        self.check_even()


def affine_normal_form(g):
    """
    Explicit (lambda, equations, linear, cross) of a unary or binary affine signature.

    A full-support binary with matrix lambda*[[i^a, i^b], [i^c, i^d]] gets
    q(x1) = c - a, q(x2) = b - a and 2*q12 = d + a - b - c, which is even exactly
    when the signature is affine. Deficient supports fall back to the general
    witness, which emits linear equations instead.
    """
    if g.arity not in (1, 2):
        raise NotInClass(f"affine_normal_form handles arity 1 and 2, got {g.arity}")
    entries = g.entries
    if all(entries):
        lam = entries[0]
        exps = [power_of_i_exponent(e / lam) for e in entries]
        if None not in exps:
            if g.arity == 1:
                return AffineWitness(1, lam, (), (exps[1] % 4,), ())
            a, b, c, d = exps
            twice = (d + a - b - c) % 4
            if twice % 2 == 0:
                cross = (((0, 1), 1),) if twice == 2 else ()
                return AffineWitness(2, lam, (), ((c - a) % 4, (b - a) % 4), cross)
    witness = is_affine(g)
    if witness is None:
        raise NotInClass(f"signature {g.literal()} is not affine")
    return witness


def build_aggregate(num_vars, constraints):
    aggregate = AffineAggregate(num_vars)
    for scope, sig in constraints:
        witness = affine_normal_form(sig) if sig.arity <= 2 else is_affine(sig)
        if witness is None:
            raise NotInClass(f"constraint on {scope} is not affine")
        aggregate.absorb(scope, witness)
    return aggregate


def _reduce_equations(equations, priority):
    """Z2 elimination; returns [(pivot, rhs, others)] or None when inconsistent."""
    solved = []     # (pivot, rhs, mask of the other variables)
    for mask, rhs in equations:
        for pivot, r, others in solved:
            if mask >> pivot & 1:
                mask ^= (1 << pivot) | others
                rhs ^= r
        if not mask:
            if rhs:
                return None
            continue
        pivot = min((k for k in range(mask.bit_length()) if mask >> k & 1), key=priority)
        others = mask & ~(1 << pivot)
        # Hapus pivot baru dari baris yang sudah selesai
        updated = []
        for p, r, o in solved:
            if o >> pivot & 1:
                o ^= (1 << pivot) | others
                r ^= rhs
            updated.append((p, r, o))
        solved = updated + [(pivot, rhs, others)]
    return [(p, r, [k for k in range(o.bit_length()) if o >> k & 1]) for p, r, o in solved]


def affine_eval(num_vars, constraints, order=None):
    """
    Sum of an affine #CSP via Gauss sums.

    `order` is an optional elimination order of the variables; the value does
    not depend on it.
    """
    aggregate = build_aggregate(num_vars, constraints)
    return evaluate_aggregate(aggregate, order)


def evaluate_aggregate(aggregate, order=None):
    n = aggregate.num_vars
    order = list(range(n)) if order is None else list(order)
    rank = {v: k for k, v in enumerate(order)}
    if not aggregate.prefactor:
        return ZERO
    agg = AffineAggregate(n, list(aggregate.equations), aggregate.constant,
                          dict(aggregate.linear), dict(aggregate.cross), aggregate.prefactor)
    solved = _reduce_equations(agg.equations, rank.__getitem__)
    if solved is None:
        logger.debug("affine_eval: inconsistent linear system")
        return ZERO
    pivots = set()
    for p, rhs, others in solved:
        agg.substitute(p, rhs, others)
        pivots.add(p)
    agg.equations = []

    factor = ONE
    remaining = [v for v in order if v not in pivots]
    while remaining:
        k = remaining.pop(0)
        a = agg.linear.pop(k, 0)
        partners = []
        for key in [key for key in agg.cross if k in key]:
            agg.cross.pop(key)
            partners.append(key[0] if key[1] == k else key[1])
        partners.sort(key=rank.__getitem__)
        if a in (0, 2):
            factor = factor * 2
            if not partners:
                if a == 2:
                    return ZERO
                continue
            # Syarat baru: xor(partners) = a/2
            y = partners[0]
            remaining.remove(y)
            agg.substitute(y, a // 2, partners[1:])
        else:
            factor = factor * (ONE_PLUS_I if a == 1 else ONE_MINUS_I)
            shift = 3 if a == 1 else 1
            for j in partners:
                agg.add_linear(j, shift)
            for j1, j2 in combinations(partners, 2):
                agg.add_cross(j1, j2, 2)
    return agg.prefactor * POWERS_OF_I[agg.constant % 4] * factor


# ---------------------------------------------------------------
# Product type: propagasi paritas
# ---------------------------------------------------------------
def product_eval(num_vars, constraints):
    """Sum of a product-type #CSP by parity propagation over =/!= relations."""
    relations = nx.MultiGraph()
    relations.add_nodes_from(range(num_vars))
    unaries = []
    for scope, sig in constraints:
        witness = is_product(sig)
        if witness is None:
            raise NotInClass(f"constraint on {scope} is not product type")
        for block, pair in zip(witness.blocks, witness.unaries):
            rep = scope[block[0][0]]
            for var, parity in block[1:]:
                relations.add_edge(rep, scope[var], parity=parity)
            unaries.append((rep, pair))

    total = ONE
    for component in nx.connected_components(relations):
        root = min(component)
        parity = {root: 0}
        for u, v in nx.bfs_edges(relations, root):
            edge_parity = next(iter(relations.get_edge_data(u, v).values()))["parity"]
            parity[v] = parity[u] ^ edge_parity
        for u, v, data in relations.subgraph(component).edges(data=True):
            if parity[u] ^ parity[v] != data["parity"]:
                logger.debug("product_eval: parity contradiction at (%s, %s)", u, v)
                return ZERO
        branch = [ONE, ONE]
        for var, (u0, u1) in unaries:
            if var not in component:
                continue
            for root_value in (0, 1):
                branch[root_value] = branch[root_value] * (u1 if root_value ^ parity[var] else u0)
        total = total * (branch[0] + branch[1])
        if not total:
            return ZERO
    return total


def all_affine(constraints):
    return all(is_affine(sig) is not None for _, sig in constraints)


def all_product(constraints):
    return all(is_product(sig) is not None for _, sig in constraints)
