"""Root data of types B_m and D_m, special vertices and spin weight spectra.

Everything lives in the standard coordinates ``t_1, ..., t_m`` of the maximal
torus of SO(2m+1) or SO(2m), written additively.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError

Vector = Tuple[Fraction, ...]


def _unit(m: int, i: int, c: int = 1) -> List[int]:
    v = [0] * m
    v[i] = c
    return v


@dataclass(frozen=True)
class RootDatum:
    series: str
    m: int

    def __post_init__(self):
        if self.series not in ("B", "D"):
            raise DomainError(f"series must be 'B' or 'D', got {self.series!r}")
        if self.m < (2 if self.series == "B" else 3):
            raise DomainError(f"rank {self.m} too small for series {self.series}")

    @property
    def simple_roots(self) -> List[Tuple[int, ...]]:
        m = self.m
        roots = []
        for i in range(m - 1):
            v = _unit(m, i)
            v[i + 1] = -1
            roots.append(tuple(v))
        if self.series == "B":
            roots.append(tuple(_unit(m, m - 1)))
        else:
            v = _unit(m, m - 2)
            v[m - 1] = 1
            roots.append(tuple(v))
        return roots

    @property
    def positive_roots(self) -> List[Tuple[int, ...]]:
        m = self.m
        roots = []
        for i in range(m):
            for j in range(i + 1, m):
                for s in (-1, 1):
                    v = _unit(m, i)
                    v[j] = s
                    roots.append(tuple(v))
        if self.series == "B":
            roots += [tuple(_unit(m, i)) for i in range(m)]
        return roots

    @property
    def vector_dim(self) -> int:
        """Dimension n of the orthogonal space: 2m+1 for B, 2m for D."""
        return 2 * self.m + (1 if self.series == "B" else 0)


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _check_rank(m: int, nu: Sequence):
    if len(nu) != m:
        raise DomainError(f"cocharacter has length {len(nu)}, expected {m}")


def standard_cocharacter(m: int) -> Vector:
    """The cocharacter acting by z on u, z^-1 on v and trivially elsewhere."""
    return tuple(Fraction(int(i == 0)) for i in range(m))


def pairings(datum: RootDatum, nu: Sequence) -> List[Fraction]:
    _check_rank(datum.m, nu)
    return [_dot(a, nu) for a in datum.simple_roots]


def special_vertex(datum: RootDatum, nu: Sequence) -> int:
    """1-based index of the unique simple root pairing to 1 with ``nu``."""
    _check_rank(datum.m, nu)
    for alpha in datum.positive_roots:
        v = _dot(alpha, nu)
        if v < 0:
            raise DomainError(f"cocharacter is not dominant: root {alpha} pairs to {v}")
        if v not in (0, 1):
            raise DomainError(f"root {alpha} pairs to {v}; adjoint weights must lie in {{-1, 0, 1}}")
    hits = [k + 1 for k, v in enumerate(pairings(datum, nu)) if v == 1]
    if len(hits) != 1:
        raise DomainError(f"expected exactly one special vertex, found {len(hits)}")
    return hits[0]


@dataclass(frozen=True)
class WeightSet:
    """Weights of a representation, listed with repetition."""

    weights: Tuple[Vector, ...]

    @property
    def m(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    @property
    def dim(self) -> int:
        return len(self.weights)

    def multiplicities(self) -> Dict[Vector, int]:
        return dict(Counter(self.weights))


def spin_weights(series: str, m: int, half: Optional[str] = None) -> WeightSet:
    """Spin (series B) or half-spin (series D) weights ``(+-1/2, ..., +-1/2)``.

    For D, ``half`` selects the parity of the number of -1/2 entries.
    """
    if series == "B":
        if half is not None:
            raise DomainError("series B has a single spin representation; half must be None")
    elif series == "D":
        if half not in ("even", "odd"):
            raise DomainError("series D needs half='even' or half='odd'")
    else:
        raise DomainError(f"series must be 'B' or 'D', got {series!r}")
    if m < 1:
        raise DomainError("rank must be >= 1")
    h = Fraction(1, 2)
    out = []
    for signs in product((1, -1), repeat=m):
        negs = signs.count(-1)
        if series == "D" and negs % 2 != (half == "odd"):
            continue
        out.append(tuple(h * s for s in signs))
    return WeightSet(tuple(out))


def standard_weights(series: str, m: int) -> WeightSet:
    """Weights of the defining representation: +-t_i, plus 0 for series B."""
    out = []
    for i in range(m):
        for s in (1, -1):
            out.append(tuple(Fraction(s if k == i else 0) for k in range(m)))
    if series == "B":
        out.append(tuple(Fraction(0) for _ in range(m)))
    elif series != "D":
        raise DomainError(f"series must be 'B' or 'D', got {series!r}")
    return WeightSet(tuple(out))


def weight_spectrum(w: WeightSet, nu: Sequence) -> Dict[Fraction, int]:
    """Multiset of pairings of the weights with ``nu``, as value -> count."""
    if w.weights:
        _check_rank(w.m, nu)
    return dict(sorted(Counter(_dot(x, nu) for x in w.weights).items()))


def has_two_weights(spectrum: Dict[Fraction, int]) -> bool:
    """True iff exactly two values ``a`` and ``a + 1`` occur."""
    vals = sorted(spectrum)
    return len(vals) == 2 and vals[1] - vals[0] == 1
