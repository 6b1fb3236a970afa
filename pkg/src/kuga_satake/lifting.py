"""Fractional lifts of cocharacters through isogenies of tori.

An isogeny of tori is recorded by the integer matrix ``M`` it induces on
cocharacter lattices. A cocharacter ``h`` of the target lifts to the rational
vector ``x = M^{-1} h``; the least ``N`` with ``N x`` integral is the level at
which the lift becomes an honest cocharacter of the source.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import DomainError
from .linalg import common_denominator, determinant, solve


@dataclass(frozen=True)
class ToralIsogeny:
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(self._as_int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise DomainError("isogeny matrix must be square and nonempty")
        if determinant(rows) == 0:
            raise DomainError("matrix is singular; not an isogeny")

    @staticmethod
    def _as_int(x) -> int:
        f = Fraction(x)
        if f.denominator != 1:
            raise DomainError(f"isogeny matrix entries must be integers, got {x}")
        return int(f)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def compose(self, other: "ToralIsogeny") -> "ToralIsogeny":
        """Matrix product ``self.matrix @ other.matrix``."""
        r = self.rank
        return ToralIsogeny(tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(r)) for j in range(r))
            for i in range(r)
        ))


@dataclass(frozen=True)
class FractionalCocharacter:
    x: Tuple[Fraction, ...]
    level: int

    @property
    def N(self) -> int:
        return self.level


def fractional_lift(iso: ToralIsogeny, h: Sequence) -> FractionalCocharacter:
    """Unique rational ``x`` with ``M x = h`` and its minimal level."""
    if len(h) != iso.rank:
        raise DomainError(f"target has length {len(h)}, expected {iso.rank}")
    x = tuple(solve(iso.matrix, h))
    return FractionalCocharacter(x, common_denominator(x))


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Elementary divisors ``d_1 | d_2 | ...`` of a square integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    out = []
    for t in range(n):
        if all(a[i][j] == 0 for i in range(t, n) for j in range(t, n)):
            out.extend([0] * (n - t))
            break
        while True:
            # move the smallest nonzero entry to (t, t)
            _, pi, pj = min(
                (abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]
            )
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p), None
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(abs(a[t][t]))
    return out


def lift_level_bound(iso: ToralIsogeny) -> int:
    """Exponent of the cokernel of ``M``: its largest elementary divisor."""
    return smith_diagonal(iso.matrix)[-1]
