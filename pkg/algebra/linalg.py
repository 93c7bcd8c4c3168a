"""Exact linear algebra over Scalar, on numpy object arrays."""
import logging

import numpy as np

from algebra.scalar import Scalar, ZERO, ONE
from errors import SingularMatrix, ValidationError

logger = logging.getLogger(__name__)


def as_matrix(rows):
    """Coerce a nested sequence (ints, Fractions, literals, Scalars) to a Scalar matrix."""
    array = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = Scalar.coerce(value)
    return array


def as_vector(values):
    vector = np.empty(len(values), dtype=object)
    for i, value in enumerate(values):
        vector[i] = Scalar.coerce(value)
    return vector


def zeros(n, m=None):
    array = np.empty((n, n if m is None else m), dtype=object)
    array.fill(ZERO)
    return array


def identity(n):
    array = zeros(n)
    for i in range(n):
        array[i, i] = ONE
    return array


def matmul(*matrices):
    result = matrices[0]
    for matrix in matrices[1:]:
        if result.shape[1] != matrix.shape[0]:
            raise ValidationError(f"shape mismatch {result.shape} x {matrix.shape}")
        product = zeros(result.shape[0], matrix.shape[1])
        for i in range(result.shape[0]):
            for j in range(matrix.shape[1]):
                acc = ZERO
                for k in range(result.shape[1]):
                    left = result[i, k]
                    if left:
                        right = matrix[k, j]
                        if right:
                            acc = acc + left * right
                product[i, j] = acc
        result = product
    return result


def matrix_power(matrix, exponent):
    if exponent < 0:
        raise ValidationError("negative matrix power")
    result, base = identity(matrix.shape[0]), matrix
    while exponent:
        if exponent & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        exponent >>= 1
    return result


def equal(left, right):
    return left.shape == right.shape and all(
        left[idx] == right[idx] for idx in np.ndindex(left.shape))


def is_scalar_matrix(matrix):
    n = matrix.shape[0]
    return all(matrix[i, j] == (matrix[0, 0] if i == j else ZERO)
               for i in range(n) for j in range(n))


def _row_reduce(augmented, n_cols):
    """In-place reduced row echelon form on a list-of-lists; returns pivot columns."""
    pivots = []
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, len(augmented)) if augmented[r][col]), None)
        if pivot is None:
            continue
        augmented[row], augmented[pivot] = augmented[pivot], augmented[row]
        inv = augmented[row][col].inv()
        augmented[row] = [v * inv for v in augmented[row]]
        for r in range(len(augmented)):
            if r != row and augmented[r][col]:
                factor = augmented[r][col]
                augmented[r] = [v - factor * p for v, p in zip(augmented[r], augmented[row])]
        pivots.append(col)
        row += 1
        if row == len(augmented):
            break
    return pivots


def det(matrix):
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValidationError("determinant of a non-square matrix")
    rows = [list(matrix[i]) for i in range(n)]
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = -result
        p = rows[col][col]
        result = result * p
        inv = p.inv()
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [v - factor * q for v, q in zip(rows[r], rows[col])]
    return result


def rank(matrix):
    rows = [list(matrix[i]) for i in range(matrix.shape[0])]
    return len(_row_reduce(rows, matrix.shape[1]))


def solve_particular(matrix, rhs):
    """One solution of A x = b (free variables set to zero), or None if inconsistent."""
    n_rows, n_cols = matrix.shape
    augmented = [list(matrix[i]) + [Scalar.coerce(rhs[i])] for i in range(n_rows)]
    pivots = _row_reduce(augmented, n_cols)
    for r in range(len(pivots), n_rows):
        if augmented[r][n_cols]:
            return None
    solution = [ZERO] * n_cols
    for r, col in enumerate(pivots):
        solution[col] = augmented[r][n_cols]
    return as_vector(solution)


def solve(matrix, rhs):
    """Unique solution of a square system; SingularMatrix otherwise."""
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValidationError("solve() needs a square system")
    augmented = [list(matrix[i]) + [Scalar.coerce(rhs[i])] for i in range(n)]
    pivots = _row_reduce(augmented, n)
    if len(pivots) < n:
        raise SingularMatrix(f"singular {n}x{n} system (rank {len(pivots)})")
    return as_vector([augmented[r][n] for r in range(n)])


def vandermonde(nodes, columns):
    """Rows [1, t, t^2, ..., t^(columns-1)] for each node t."""
    matrix = zeros(len(nodes), columns)
    for i, node in enumerate(nodes):
        power = ONE
        for j in range(columns):
            matrix[i, j] = power
            power = power * node
    return matrix


def vandermonde_solve(nodes, values):
    """Coefficients c with sum_j c_j * t_i^j = values_i; nodes must be pairwise distinct."""
    nodes = [Scalar.coerce(t) for t in nodes]
    if len(set(nodes)) != len(nodes):
        raise SingularMatrix("Vandermonde nodes are not pairwise distinct")
    logger.debug("Vandermonde solve with %d nodes", len(nodes))
    return solve(vandermonde(nodes, len(nodes)), values)
