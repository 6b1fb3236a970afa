"""Exact Clifford algebra of a diagonal rational quadratic form.

Basis elements are indexed by bitmasks: bit ``i`` (0-based) set in ``S`` means
the generator ``e_{i+1}`` occurs in the ordered product ``e_S``. Generators
inside a monomial are always kept in increasing order, so

    e_S * e_T = (-1)^inv(S, T) * prod(d_i for i in S & T) * e_{S ^ T}

where ``inv(S, T)`` counts pairs ``(i, j)`` with ``i in S``, ``j in T``,
``i > j``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import DomainError, OracleMismatchError
from .linalg import sparse_nullspace
from .quadspace import DiagonalForm, is_square, square_class

#: Largest n for which ``even_center`` runs unless configured otherwise.
DEFAULT_CENTER_MAX_N = 8


def oracle_max_n() -> int:
    return int(os.environ.get("KS_ORACLE_MAX_N", DEFAULT_CENTER_MAX_N))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_to_indices(mask: int) -> List[int]:
    """1-based generator indices in increasing order."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise DomainError("generator indices are 1-based")
        mask |= 1 << (i - 1)
    return mask


def reorder_sign(a: int, b: int) -> int:
    """(-1) to the number of pairs i in a, j in b with i > j."""
    swaps = 0
    a >>= 1
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, d: DiagonalForm) -> Tuple[Fraction, int]:
    """``e_a * e_b`` as ``(coefficient, mask)``."""
    coef = Fraction(reorder_sign(a, b))
    common = a & b
    i = 0
    while common:
        if common & 1:
            coef *= d.coeffs[i]
        common >>= 1
        i += 1
    return coef, a ^ b


@dataclass(frozen=True)
class CliffordElement:
    n: int
    coords: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mask, c in self.coords.items():
            if not 0 <= mask < 1 << self.n:
                raise DomainError(f"basis mask {mask} out of range for n={self.n}")
            c = Fraction(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "coords", clean)

    @classmethod
    def scalar(cls, n: int, c=1) -> "CliffordElement":
        return cls(n, {0: c})

    @classmethod
    def basis(cls, n: int, mask: int, c=1) -> "CliffordElement":
        return cls(n, {mask: c})

    @classmethod
    def generator(cls, n: int, i: int) -> "CliffordElement":
        """``e_i`` with 1-based ``i``."""
        return cls(n, {indices_to_mask([i]): 1})

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        _check_same_n(self, other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, Fraction(0)) + v
        return CliffordElement(self.n, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + other.scale(-1)

    def scale(self, c) -> "CliffordElement":
        c = Fraction(c)
        return CliffordElement(self.n, {k: v * c for k, v in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self):
        return hash((self.n, frozenset(self.coords.items())))

    @property
    def is_even(self) -> bool:
        return all(popcount(m) % 2 == 0 for m in self.coords)

    def scalar_part(self) -> Fraction:
        return self.coords.get(0, Fraction(0))

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self.coords)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        terms = []
        for mask in sorted(self.coords, key=lambda m: (popcount(m), m)):
            c = self.coords[mask]
            name = "e{" + ",".join(str(i) for i in mask_to_indices(mask)) + "}"
            terms.append(f"{c}*{name}" if mask else str(c))
        return " + ".join(terms)


def _check_same_n(a: CliffordElement, b: CliffordElement, d: Optional[DiagonalForm] = None):
    if a.n != b.n or (d is not None and d.n != a.n):
        raise DomainError("dimension mismatch between Clifford operands")


def clifford_product(a: CliffordElement, b: CliffordElement, d: DiagonalForm) -> CliffordElement:
    _check_same_n(a, b, d)
    out: Dict[int, Fraction] = {}
    for ma, ca in a.coords.items():
        for mb, cb in b.coords.items():
            coef, m = blade_product(ma, mb, d)
            out[m] = out.get(m, Fraction(0)) + coef * ca * cb
    return CliffordElement(a.n, out)


def expand_product(a: CliffordElement, b: CliffordElement, d: DiagonalForm) -> CliffordElement:
    """Reference product: concatenate generator words and bubble-sort them.

    Each adjacent swap of distinct generators flips the sign, and each
    adjacent equal pair ``e_i e_i`` collapses to ``d_i``. Independent of the
    bitmask sign rule and used only as a cross-check.
    """
    _check_same_n(a, b, d)
    out: Dict[int, Fraction] = {}
    for ma, ca in a.coords.items():
        for mb, cb in b.coords.items():
            word = mask_to_indices(ma) + mask_to_indices(mb)
            coef = ca * cb
            changed = True
            while changed:
                changed = False
                k = 0
                while k < len(word) - 1:
                    x, y = word[k], word[k + 1]
                    if x == y:
                        coef *= d.coeffs[x - 1]
                        del word[k : k + 2]
                        changed = True
                    elif x > y:
                        word[k], word[k + 1] = y, x
                        coef = -coef
                        changed = True
                        k += 1
                    else:
                        k += 1
            m = indices_to_mask(word)
            out[m] = out.get(m, Fraction(0)) + coef
    return CliffordElement(a.n, out)


def even_basis(n: int) -> List[int]:
    """Bitmasks of even popcount, in increasing order."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return [m for m in range(1 << n) if popcount(m) % 2 == 0]


def dimension_check(n: int) -> Tuple[int, int]:
    if n < 1:
        raise DomainError("n must be >= 1")
    return 1 << n, 1 << (n - 1)


@dataclass(frozen=True)
class CenterReport:
    """Center of the even Clifford algebra.

    ``split`` is ``None`` for odd ``n`` (the center is just the scalars);
    for even ``n`` it says whether the center is isomorphic to ``Q x Q``.
    ``square`` records ``z^2`` for the normalized nonscalar central element.
    """

    n: int
    dim: int
    basis: Tuple[CliffordElement, ...]
    split: Optional[bool]
    square: Optional[Fraction] = None


def _commutator_rows(d: DiagonalForm, evens: List[int], generators: List[int]):
    """Linear constraints ``z g - g z = 0`` in the coordinates of ``z``."""
    col = {m: k for k, m in enumerate(evens)}
    for g in generators:
        eqs: Dict[int, Dict[int, Fraction]] = {}
        for m in evens:
            cl, out = blade_product(m, g, d)
            cr, out2 = blade_product(g, m, d)
            assert out == out2
            coef = cl - cr
            if coef:
                eqs.setdefault(out, {})[col[m]] = coef
        yield from eqs.values()


def even_center(d: DiagonalForm, max_n: Optional[int] = None) -> CenterReport:
    """Compute the center of C+(V) from scratch by exact linear algebra."""
    n = d.n
    limit = oracle_max_n() if max_n is None else max_n
    if n > limit:
        raise DomainError(f"even_center limited to n <= {limit}, got n={n}")
    evens = even_basis(n)
    gens = [indices_to_mask(p) for p in combinations(range(1, n + 1), 2)]
    null = sparse_nullspace(list(_commutator_rows(d, evens, gens)), len(evens))
    basis = tuple(
        CliffordElement(n, {evens[k]: v for k, v in enumerate(vec) if v}) for vec in null
    )
    # post-check against every even basis element, not just the generators
    for z in basis:
        for m in evens:
            g = CliffordElement.basis(n, m)
            if clifford_product(z, g, d) != clifford_product(g, z, d):
                raise OracleMismatchError("center element fails to commute with C+ basis")

    if n % 2:
        return CenterReport(n, len(basis), basis, None)
    if len(basis) != 2:
        raise OracleMismatchError(f"center of C+ has dimension {len(basis)} for even n")
    one = CliffordElement.scalar(n)
    w = next(z for z in basis if not z.is_scalar())
    w = w - one.scale(w.scalar_part())
    w2 = clifford_product(w, w, d)
    # w^2 = c + t*w inside the 2-dimensional center; complete the square
    lead = next(iter(w.coords))
    t = w2.coords.get(lead, Fraction(0)) / w.coords[lead]
    w = w - one.scale(t / 2)
    s_elem = clifford_product(w, w, d)
    if not s_elem.is_scalar():
        raise OracleMismatchError("normalized central element does not square to a scalar")
    s = s_elem.scalar_part()
    if s == 0:
        raise OracleMismatchError("central element is nilpotent")
    return CenterReport(n, 2, basis, is_square(s), s)


def center_split_predicted(d: DiagonalForm) -> bool:
    """Closed-form prediction: (-1)^(n/2) * prod(d) is a rational square."""
    if d.n % 2:
        raise DomainError("splitness only defined for even n")
    return square_class((-1) ** (d.n // 2) * d.determinant()).is_square
