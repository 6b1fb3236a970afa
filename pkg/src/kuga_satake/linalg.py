"""Small exact linear algebra over ``Fraction`` used across the package.

Matrices are plain lists of lists. Nothing here tries to be fast; inputs are
desk-scale (at most a few hundred rows).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence

Matrix = List[List[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [
        [sum((Fraction(row[k]) * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
        for row in a
    ]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matvec(a: Sequence[Sequence], x: Sequence) -> List[Fraction]:
    return [sum((Fraction(c) * v for c, v in zip(row, x)), Fraction(0)) for row in a]


def determinant(a: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = to_fraction_matrix(a)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det *= p
        for r in range(c + 1, n):
            f = m[r][c] / p
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def solve(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve the square nonsingular system ``a x = b`` exactly.

    Raises ``ZeroDivisionError`` if ``a`` is singular.
    """
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n] for row in m]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    cols = [solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def sparse_nullspace(rows: Sequence[Dict[int, Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{x : row . x = 0 for every row}`` for sparse rows.

    Rows map column index to coefficient. Reduced row echelon form is built
    incrementally so that duplicate or dependent rows cost little.
    """
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for raw in rows:
        row = {k: Fraction(v) for k, v in raw.items() if v != 0}
        for col, prow in pivots.items():
            f = row.get(col)
            if f:
                for k, v in prow.items():
                    nv = row.get(k, Fraction(0)) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        col = min(row)
        p = row[col]
        row = {k: v / p for k, v in row.items()}
        for other in pivots.values():
            f = other.get(col)
            if f:
                for k, v in row.items():
                    nv = other.get(k, Fraction(0)) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[col] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for col, prow in pivots.items():
            vec[col] = -prow.get(free, Fraction(0))
        basis.append(vec)
    return basis


def common_denominator(values: Sequence[Fraction]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def is_integral(values: Sequence) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def first_nonzero(values: Sequence) -> Optional[int]:
    return next((i for i, v in enumerate(values) if v != 0), None)
