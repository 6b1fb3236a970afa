"""Hodge types as multisets of rational (p, q) pairs.

A type records only the dimensions of the pieces ``V^{p,q}``. Conjugation
symmetry is enforced: the multiplicity of ``(p, q)`` equals that of
``(q, p)``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import DomainError, OracleMismatchError, ParseError, ShapeError

Pair = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HodgeType:
    """Multiset of (p, q) pairs.

    ``real=False`` skips the conjugation-symmetry check, for one-sided pieces
    such as ``{(1, 0)}`` that only occur as intermediate values.
    """

    entries: Tuple[Tuple[Pair, int], ...]

    def __init__(self, entries: Mapping | Iterable, real: bool = True):
        counts: Counter = Counter()
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if len(item) == 2 and isinstance(item[0], tuple):
                (p, q), m = item
            else:
                (p, q), m = item, 1
            if int(m) != m or m < 1:
                raise DomainError(f"multiplicity must be a positive integer, got {m}")
            counts[(Fraction(p), Fraction(q))] += int(m)
        if not counts:
            raise DomainError("a Hodge type must have dimension >= 1")
        for (p, q), m in counts.items():
            if real and counts.get((q, p), 0) != m:
                raise DomainError(f"type is not conjugation-symmetric at ({p}, {q})")
        object.__setattr__(self, "entries", tuple(sorted(counts.items())))

    def is_real(self) -> bool:
        c = self.counts
        return all(c.get((q, p), 0) == m for (p, q), m in self.entries)

    @property
    def counts(self) -> Dict[Pair, int]:
        return dict(self.entries)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def support(self) -> frozenset:
        return frozenset(pq for pq, _ in self.entries)

    def __str__(self) -> str:
        return ", ".join(f"({p},{q}):{m}" for (p, q), m in self.entries)


def tensor(a: HodgeType, b: HodgeType) -> HodgeType:
    out: Counter = Counter()
    for (p1, q1), m1 in a.entries:
        for (p2, q2), m2 in b.entries:
            out[(p1 + p2, q1 + q2)] += m1 * m2
    return HodgeType(out, real=False)


def tensor_all(factors: Iterable[HodgeType]) -> HodgeType:
    it = iter(factors)
    out = next(it)
    for f in it:
        out = tensor(out, f)
    return out


def dual(a: HodgeType) -> HodgeType:
    return HodgeType({(-p, -q): m for (p, q), m in a.entries}, real=False)


def tate_twist(a: HodgeType, c) -> HodgeType:
    """Tensor with the one-dimensional structure of type ``(-c, -c)``."""
    c = Fraction(c)
    return HodgeType({(p - c, q - c): m for (p, q), m in a.entries}, real=False)


def direct_sum(a: HodgeType, b: HodgeType) -> HodgeType:
    return HodgeType(Counter(a.counts) + Counter(b.counts), real=False)


def purity(a: HodgeType) -> Optional[Fraction]:
    weights = {p + q for p, q in a.support}
    return weights.pop() if len(weights) == 1 else None


K3_SUPPORT = frozenset({(Fraction(1), Fraction(-1)), (Fraction(0), Fraction(0)), (Fraction(-1), Fraction(1))})
ABELIAN_SUPPORT = frozenset({(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))})


def is_k3_type(a: HodgeType) -> bool:
    return a.support <= K3_SUPPORT and a.counts.get((Fraction(1), Fraction(-1)), 0) == 1


def is_abelian_type(a: HodgeType) -> bool:
    return a.support <= ABELIAN_SUPPORT


def weight1_tensor_factor(factors: List[HodgeType]) -> Tuple[int, List[Fraction]]:
    """Locate the factor carrying the weight in a weight-one tensor decomposition.

    Given factors whose tensor product has type {(0,1),(1,0)}, returns the
    unique index ``i`` whose factor is of type {(c+1, c), (c, c+1)} together
    with the constants ``c_j`` (in order, skipping ``i``) such that every
    other factor is of type {(c_j, c_j)}.
    """
    if not factors:
        raise ShapeError("need at least one factor")
    if not is_abelian_type(tensor_all(factors)):
        raise ShapeError("tensor product of the factors is not of type {(0,1),(1,0)}")
    # across the product, sum(p_j) takes exactly the values 0 and 1, so
    # exactly one factor can have more than one p-value
    spread = [len({p for p, _ in f.support}) for f in factors]
    movers = [k for k, s in enumerate(spread) if s > 1]
    if len(movers) != 1:
        raise OracleMismatchError(f"expected exactly one non-constant factor, found {len(movers)}")
    i = movers[0]
    constants = []
    for j, f in enumerate(factors):
        if j == i:
            continue
        (c, c2), = f.support
        if c != c2:
            raise OracleMismatchError(f"factor {j} is not of type (c, c)")
        constants.append(c)
    ci = -sum(constants, Fraction(0))
    if factors[i].support != {(ci + 1, ci), (ci, ci + 1)}:
        raise OracleMismatchError(f"factor {i} is not of type {{(c+1,c),(c,c+1)}}")
    return i, constants


_ENTRY = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*(?::\s*(\d+))?")


def parse_hodge_type(text: str) -> HodgeType:
    """Parse ``"(p,q):m, (p,q), ..."``; multiplicity defaults to 1."""
    pos = 0
    entries = []
    text = text.strip()
    while pos < len(text):
        m = _ENTRY.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse Hodge type near {text[pos:]!r}")
        try:
            pair = (Fraction(m.group(1)), Fraction(m.group(2)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational in {m.group(0)!r}") from exc
        entries.append((pair, int(m.group(3) or 1)))
        pos = m.end()
        rest = text[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
        pos = len(text) - len(rest)
    if not entries:
        raise ParseError("empty Hodge type")
    return HodgeType(entries)
