"""Rational quadratic spaces: diagonalization, signature, discriminant.

The discriminant of a space is the square class of the determinant of its Gram
matrix, with no sign normalization. Under this convention three hyperbolic
planes have discriminant -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod
from typing import Iterable, List, Sequence, Tuple

from .errors import DegenerateFormError, DomainError, FactorizationLimitError
from .linalg import Matrix, determinant, identity

#: Trial division stops at this prime bound unless a caller asks otherwise.
DEFAULT_TRIAL_BOUND = 10**6


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/(Q*)^2, represented by a squarefree integer."""

    rep: int

    def __post_init__(self):
        if self.rep == 0:
            raise DomainError("square class of zero is undefined")

    @property
    def is_square(self) -> bool:
        return self.rep == 1

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return square_class(self.rep * other.rep)

    def __str__(self) -> str:
        return str(self.rep)


@dataclass(frozen=True)
class DiagonalForm:
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("a diagonal form needs at least one coefficient")
        if any(c == 0 for c in self.coeffs):
            raise DegenerateFormError("diagonal form has a zero coefficient")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def determinant(self) -> Fraction:
        return prod(self.coeffs, start=Fraction(1))


@dataclass(frozen=True)
class QuadraticSpace:
    """Nondegenerate symmetric bilinear form given by its Gram matrix."""

    gram: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n == 0:
            raise DomainError("quadratic space must have dimension >= 1")
        if any(len(r) != n for r in rows):
            raise DomainError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(f"Gram matrix is not symmetric at ({i}, {j})")
        if determinant(rows) == 0:
            raise DegenerateFormError("Gram matrix is singular")

    @property
    def n(self) -> int:
        return len(self.gram)

    def determinant(self) -> Fraction:
        return determinant(self.gram)

    def value(self, x: Sequence, y: Sequence = None) -> Fraction:
        """Bilinear pairing ``x^T G y`` (``q(x) = x^T G x`` when ``y`` is omitted)."""
        y = x if y is None else y
        return sum(
            (Fraction(x[i]) * self.gram[i][j] * y[j] for i in range(self.n) for j in range(self.n)),
            Fraction(0),
        )


def _squarefree_int(m: int, bound: int) -> int:
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    p = 2
    while p <= bound and p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    if m > 1:
        if p * p > m:
            # remaining cofactor has no factor <= sqrt, hence prime
            out *= m
        else:
            r = isqrt(m)
            if r * r != m:
                raise FactorizationLimitError(
                    f"cofactor {m} exceeds the trial-division bound {bound}"
                )
    return sign * out


def square_class(a, bound: int = DEFAULT_TRIAL_BOUND) -> SquareClass:
    """Squarefree integer representing the class of the nonzero rational ``a``."""
    a = Fraction(a)
    if a == 0:
        raise DomainError("square class of zero is undefined")
    # p/q and p*q differ by the square q^2
    return SquareClass(_squarefree_int(a.numerator * a.denominator, bound))


def is_square(a) -> bool:
    a = Fraction(a)
    if a <= 0:
        return False
    num, den = a.numerator, a.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def diagonalize_with_basis(space: QuadraticSpace) -> Tuple[DiagonalForm, Matrix]:
    """Return ``(form, P)`` with ``P^T G P = diag(form.coeffs)``.

    Columns of ``P`` are the new basis vectors.
    """
    n = space.n
    g = [list(r) for r in space.gram]
    p = identity(n)  # column j of p expresses current basis vector j

    def add_col(dst, src, f):
        # basis_dst += f * basis_src, applied as a congruence on g
        for i in range(n):
            p[i][dst] += f * p[i][src]
        for k in range(n):
            g[dst][k] += f * g[src][k]
        for k in range(n):
            g[k][dst] += f * g[k][src]

    def swap(a, b):
        for i in range(n):
            p[i][a], p[i][b] = p[i][b], p[i][a]
        g[a], g[b] = g[b], g[a]
        for row in g:
            row[a], row[b] = row[b], row[a]

    for k in range(n):
        piv = next((j for j in range(k, n) if g[j][j] != 0), None)
        if piv is None:
            partner = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if g[i][j] != 0), None
            )
            if partner is None:
                raise DegenerateFormError("form is degenerate")
            i, j = partner
            # q(x + y) = 2 b(x, y) != 0 since q(x) = q(y) = 0
            add_col(i, j, Fraction(1))
            piv = i
        if piv != k:
            swap(k, piv)
        d = g[k][k]
        for j in range(k + 1, n):
            if g[k][j] != 0:
                add_col(j, k, -g[k][j] / d)
    coeffs = [g[i][i] for i in range(n)]
    if any(c == 0 for c in coeffs):
        raise DegenerateFormError("form is degenerate")
    return DiagonalForm(tuple(coeffs)), p


def diagonalize(space: QuadraticSpace) -> DiagonalForm:
    return diagonalize_with_basis(space)[0]


def signature(space: QuadraticSpace) -> Tuple[int, int]:
    coeffs = diagonalize(space).coeffs
    pos = sum(1 for c in coeffs if c > 0)
    return pos, len(coeffs) - pos


def discriminant(space: QuadraticSpace) -> SquareClass:
    return square_class(space.determinant())


def diagonal(values: Iterable) -> QuadraticSpace:
    vals = [Fraction(v) for v in values]
    if any(v == 0 for v in vals):
        raise DegenerateFormError("diagonal entry is zero")
    n = len(vals)
    return QuadraticSpace(tuple(tuple(vals[i] if i == j else 0 for j in range(n)) for i in range(n)))


def hyperbolic_plane() -> QuadraticSpace:
    return QuadraticSpace(((0, 1), (1, 0)))


def direct_sum(a: QuadraticSpace, b: QuadraticSpace) -> QuadraticSpace:
    n, m = a.n, b.n
    zero = Fraction(0)
    rows: List[Tuple[Fraction, ...]] = [row + (zero,) * m for row in a.gram]
    rows += [(zero,) * n + row for row in b.gram]
    return QuadraticSpace(tuple(rows))


def hyperbolic_sum(k: int) -> QuadraticSpace:
    """``U^k``, the orthogonal sum of ``k`` hyperbolic planes."""
    if k < 1:
        raise DomainError("U^k needs k >= 1")
    out = hyperbolic_plane()
    for _ in range(k - 1):
        out = direct_sum(out, hyperbolic_plane())
    return out
