"""Exact linear algebra over a :class:`Field` on sympy DomainMatrix.

Matrices are kept in sparse format. The DomainMatrix operators convert both
operands to dense format, so products and sums go through :func:`matmul`,
:func:`add`, :func:`sub` and :func:`scale` instead. Everything that needs
elimination goes through ``DomainMatrix.rref``, which works over both
coefficient domains.
"""

from functools import reduce
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from src.core.scalar import Field


Entries = Dict[Tuple[int, int], object]


def add_into(acc: dict, key, value) -> None:
    """acc[key] += value, dropping the key when the sum vanishes."""
    if not value:
        return
    total = acc.get(key)
    total = value if total is None else total + value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def matrix_from_entries(field: Field, rows: int, cols: int, entries: Entries) -> DomainMatrix:
    dok = {key: value for key, value in entries.items() if value}
    return DomainMatrix.from_dok(dok, (rows, cols), field.domain)


def entries(matrix: DomainMatrix) -> Entries:
    return {key: value for key, value in matrix.to_dok().items() if value}


def matmul(*matrices: DomainMatrix) -> DomainMatrix:
    return reduce(lambda a, b: a.to_sparse().matmul(b.to_sparse()), matrices)


def add(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    return left.to_sparse().add(right.to_sparse())


def sub(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    return left.to_sparse().sub(right.to_sparse())


def scale(matrix: DomainMatrix, value) -> DomainMatrix:
    return matrix.to_sparse().scalarmul(value)


def identity(field: Field, size: int) -> DomainMatrix:
    return matrix_from_entries(field, size, size, {(i, i): field.one for i in range(size)})


def zero(field: Field, rows: int, cols: int) -> DomainMatrix:
    return matrix_from_entries(field, rows, cols, {})


def rref_rows(matrix: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    reduced, pivots = matrix.rref()
    return reduced, tuple(pivots)


def rank(matrix: DomainMatrix) -> int:
    if not entries(matrix):
        return 0
    return len(rref_rows(matrix)[1])


def inverse(field: Field, matrix: DomainMatrix) -> Optional[DomainMatrix]:
    """Two-sided inverse of a square matrix, or None when singular."""
    size, cols = matrix.shape
    if size != cols:
        return None
    augmented = matrix.hstack(identity(field, size))
    reduced, pivots = rref_rows(augmented)
    if tuple(pivots[:size]) != tuple(range(size)) or len(pivots) != size:
        return None
    result = {}
    for (r, c), value in entries(reduced).items():
        if c >= size:
            result[(r, c - size)] = value
    return matrix_from_entries(field, size, size, result)


def solve(field: Field, matrix: DomainMatrix, rhs: Dict[int, object]) -> Optional[Dict[int, object]]:
    """
    One solution of matrix * x = rhs with free variables set to zero.

    Returns:
        dict: Sparse solution vector, or None when the system is inconsistent
    """
    rows, cols = matrix.shape
    column = matrix_from_entries(field, rows, 1, {(r, 0): v for r, v in rhs.items()})
    reduced, pivots = rref_rows(matrix.hstack(column))
    if cols in pivots:
        return None
    solution = {}
    for (r, c), value in entries(reduced).items():
        if c == cols:
            solution[pivots[r]] = value
    return solution


def first_difference(left: DomainMatrix, right: DomainMatrix) -> Optional[Tuple[Tuple[int, int], object]]:
    """First (row, col) in lexicographic order where two matrices differ, with left - right there."""
    diff = entries(sub(left, right))
    if not diff:
        return None
    key = min(diff)
    return key, diff[key]


def kron(field: Field, left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    lr, lc = left.shape
    rr, rc = right.shape
    result = {}
    right_entries = entries(right)
    for (i, j), a in entries(left).items():
        for (k, l), b in right_entries.items():
            result[(i * rr + k, j * rc + l)] = a * b
    return matrix_from_entries(field, lr * rr, lc * rc, result)


def vectors_rank(field: Field, vectors: List[Dict[object, object]], index: Dict[object, int]) -> int:
    """Rank of a family of sparse vectors keyed by the labels in ``index``."""
    if not vectors:
        return 0
    rows = {}
    for r, vector in enumerate(vectors):
        for key, value in vector.items():
            rows[(r, index[key])] = value
    return rank(matrix_from_entries(field, len(vectors), len(index), rows))
