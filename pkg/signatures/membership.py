"""
Membership tests for the tractable classes: product type (P), affine (A),
matchgates (M) and their Hadamard images (M-hat), plus the
non-singular-redundant property.

Every positive answer carries a witness that reconstructs the signature
entrywise; callers in tests check the reconstruction.
"""
import logging
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np
from sympy.utilities.iterables import multiset_partitions

from algebra import linalg
from algebra.scalar import Scalar, ZERO, ONE
from signatures.signature import (bits_of, flip_variable, hadamard_image, index_of,
                                  signature_matrix)

logger = logging.getLogger(__name__)

POWERS_OF_I = tuple(Scalar.zeta(2 * k) for k in range(4))


def power_of_i_exponent(value):
    """e in Z4 with value == i^e, or None."""
    for e, unit in enumerate(POWERS_OF_I):
        if value == unit:
            return e
    return None


# ---------------------------------------------------------------
# Affine (A)
# ---------------------------------------------------------------
@dataclass(frozen=True)
class AffineWitness:
    """f(x) = lam * [A x = r] * i^Q(x), Q(x) = sum a_k x_k + sum 2 b_ij x_i x_j (mod 4)."""
    arity: int
    lam: Scalar
    equations: tuple      # ((mask bits over x1..xn), rhs)
    linear: tuple         # a_k in Z4
    cross: tuple          # ((i, j), b_ij) with b_ij in Z2, i < j

    def quadratic(self, bits):
        q = sum(a * x for a, x in zip(self.linear, bits))
        q += sum(2 * b * bits[i] * bits[j] for (i, j), b in self.cross)
        return q % 4

    def satisfies(self, bits):
        return all(sum(m * x for m, x in zip(mask, bits)) % 2 == rhs for mask, rhs in self.equations)

    def value(self, bits):
        if not self.satisfies(bits):
            return ZERO
        return self.lam * POWERS_OF_I[self.quadratic(bits)]

    def reconstruct(self):
        return tuple(self.value(bits_of(i, self.arity)) for i in range(1 << self.arity))


def _parity(v):
    return bin(v).count("1") & 1


def _xor_basis(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def affine_support_equations(support, arity):
    """Z2 equations cutting out the affine hull of `support` (list of (mask, rhs))."""
    s0 = support[0]
    directions = _xor_basis([s ^ s0 for s in support])
    normals = [m for m in range(1, 1 << arity) if all(_parity(m & d) == 0 for d in directions)]
    return [(m, _parity(m & s0)) for m in _xor_basis(normals)], directions


def is_affine_support(support):
    supp = set(support)
    if len(supp) & (len(supp) - 1):
        return False
    return all((u ^ v ^ w) in supp for u in supp for v in supp for w in supp)


def is_affine(f):
    """AffineWitness when f is in A, else None (exhaustive quadratic search)."""
    n = f.arity
    support = [i for i, e in enumerate(f.entries) if e]
    if not support:
        return AffineWitness(n, ZERO, (), (0,) * n, ())
    if not is_affine_support(support):
        return None
    s0 = support[0]
    base = f.entries[s0]
    exponents = {}
    for s in support:
        e = power_of_i_exponent(f.entries[s] / base)
        if e is None:
            return None
        exponents[s] = e
    equations, _ = affine_support_equations(support, n)
    pairs = list(combinations(range(n), 2))

    # Semua kandidat Q sekaligus: (linear x cross x titik)
    points = np.array([bits_of(s, n) for s in support], dtype=np.int64)
    target = np.array([exponents[s] for s in support], dtype=np.int64)
    linear_rows = list(product(range(4), repeat=n))
    cross_rows = list(product((0, 1), repeat=len(pairs)))
    linear_grid = np.array(linear_rows, dtype=np.int64).reshape(len(linear_rows), n)
    cross_grid = np.array(cross_rows, dtype=np.int64).reshape(len(cross_rows), len(pairs))
    pair_values = np.array([[p[i] * p[j] for i, j in pairs] for p in points],
                           dtype=np.int64).reshape(len(points), len(pairs))
    q = (linear_grid @ points.T)[:, None, :] + 2 * (cross_grid @ pair_values.T)[None, :, :]
    shifted = (q - q[:, :, :1]) % 4
    hits = np.argwhere(np.all(shifted == target[None, None, :], axis=2))
    if not len(hits):
        return None
    li, ci = hits[0]
    linear = tuple(int(v) for v in linear_grid[li])
    cross = tuple((p, 1) for p, b in zip(pairs, cross_grid[ci]) if b)
    q0 = int(q[li, ci, 0]) % 4
    lam = base / POWERS_OF_I[q0]
    mask_eqs = tuple((bits_of(m, n), rhs) for m, rhs in equations)
    return AffineWitness(n, lam, mask_eqs, linear, cross)


# ---------------------------------------------------------------
# Product type (P)
# ---------------------------------------------------------------
@dataclass(frozen=True)
class ProductWitness:
    """Blocks of (variable, parity vs. block representative) with one unary per block."""
    arity: int
    blocks: tuple     # ((var, parity), ...) per block, first entry is the representative with parity 0
    unaries: tuple    # (u0, u1) per block

    def value(self, bits):
        result = ONE
        for block, (u0, u1) in zip(self.blocks, self.unaries):
            rep = bits[block[0][0]]
            if any(bits[var] != rep ^ parity for var, parity in block):
                return ZERO
            result = result * (u1 if rep else u0)
        return result

    def reconstruct(self):
        return tuple(self.value(bits_of(i, self.arity)) for i in range(1 << self.arity))


def _assignment(blocks, reps):
    bits = [0] * sum(len(b) for b in blocks)
    for block, rep in zip(blocks, reps):
        for var, parity in block:
            bits[var] = rep ^ parity
    return tuple(bits)


def is_product(f):
    """ProductWitness when f is a product of unaries, =2 and !=2, else None."""
    n = f.arity
    entries = f.entries
    if not any(entries):
        blocks = tuple(((k, 0),) for k in range(n))
        return ProductWitness(n, blocks, ((ZERO, ZERO),) + ((ONE, ONE),) * (n - 1))
    support = [i for i, e in enumerate(entries) if e]
    for partition in multiset_partitions(list(range(n))):
        rest_counts = [len(block) - 1 for block in partition]
        for parity_flat in product((0, 1), repeat=sum(rest_counts)):
            # Susun blok: (var, parity) dengan representatif di depan
            blocks, cursor = [], 0
            for block, extra in zip(partition, rest_counts):
                parities = (0,) + parity_flat[cursor:cursor + extra]
                cursor += extra
                blocks.append(tuple(zip(block, parities)))
            allowed = {index_of(_assignment(blocks, reps))
                       for reps in product((0, 1), repeat=len(blocks))}
            if any(s not in allowed for s in support):
                continue
            witness = _rank_one(entries, blocks, n)
            if witness is not None:
                return witness
    return None


def _rank_one(entries, blocks, n):
    k = len(blocks)
    table = {reps: entries[index_of(_assignment(blocks, reps))]
             for reps in product((0, 1), repeat=k)}
    star = next(reps for reps, value in table.items() if value)
    pivot = table[star]
    unaries = []
    for b in range(k):
        pair = []
        for v in (0, 1):
            point = list(star)
            point[b] = v
            value = table[tuple(point)]
            pair.append(value if b == 0 else value / pivot)
        unaries.append(tuple(pair))
    for reps, value in table.items():
        expected = ONE
        for b, rep in enumerate(reps):
            expected = expected * unaries[b][rep]
        if expected != value:
            return None
    return ProductWitness(n, tuple(blocks), tuple(unaries))


# ---------------------------------------------------------------
# Matchgates (M) dan Hadamard (M-hat)
# ---------------------------------------------------------------
def is_matchgate(f):
    """Six-vertex matchgate condition ax = cz - by."""
    return f.a * f.x == f.c * f.z - f.b * f.y


def parity_class(f):
    """'even', 'odd', 'zero' or None (mixed parity)."""
    even = any(e for i, e in enumerate(f.entries) if not _parity(i))
    odd = any(e for i, e in enumerate(f.entries) if _parity(i))
    if even and odd:
        return None
    if even:
        return "even"
    return "odd" if odd else "zero"


def even_matchgate_identity(f):
    """f0000 f1111 - f0011 f1100 == f0110 f1001 - f0101 f1010 (equal outer/inner determinants)."""
    e = f.entries
    return e[0b0000] * e[0b1111] - e[0b0011] * e[0b1100] == e[0b0110] * e[0b1001] - e[0b0101] * e[0b1010]


def is_matchgate_general(f):
    """Matchgate test for any signature of arity <= 4 (parity, plus the determinant identity at arity 4)."""
    parity = parity_class(f)
    if parity is None:
        return False
    if parity == "zero" or f.arity < 4:
        return True
    if parity == "odd":
        f = flip_variable(f, 1)
    return even_matchgate_identity(f)


def is_matchgate_hat(f):
    """True iff the Hadamard image of f is a matchgate signature."""
    image = hadamard_image(f.general() if hasattr(f, "general") else f)
    result = is_matchgate_general(image)
    logger.debug("M-hat test: image parity %s -> %s", parity_class(image), result)
    return result


# ---------------------------------------------------------------
# Non-singular redundant
# ---------------------------------------------------------------
def is_nonsingular_redundant(f):
    """Some view has equal middle rows and columns and a non-singular compressed 3x3 matrix."""
    for view in range(4):
        m = signature_matrix(f, view)
        if any(m[1, j] != m[2, j] for j in range(4)) or any(m[i, 1] != m[i, 2] for i in range(4)):
            continue
        keep = (0, 1, 3)
        compressed = linalg.as_matrix([[m[i, j] for j in keep] for i in keep])
        if linalg.det(compressed):
            return True
    return False
