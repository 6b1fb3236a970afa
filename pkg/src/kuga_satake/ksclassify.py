"""Simple-factor structure of the Kuga-Satake Hodge structure.

For a quadratic space of dimension ``n`` and discriminant ``delta`` the even
Clifford algebra (dimension ``2^(n-1)``) splits as a Hodge structure into
copies of one or two simple factors. Which of the two quaternion-algebra
branches (``r = 1`` split, ``r = 2`` nonsplit) occurs is not decidable from
``(n, delta)`` alone, so every report carries both.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from .clifford import center_split_predicted, even_center, oracle_max_n
from .errors import DomainError, OracleMismatchError
from .quadspace import QuadraticSpace, SquareClass, diagonalize, discriminant, signature, square_class


class KSCase(str, Enum):
    ODD = "ODD"
    EVEN_NONSQUARE = "EVEN_NONSQUARE"
    EVEN_SQUARE = "EVEN_SQUARE"

    @property
    def roman(self) -> str:
        return {"ODD": "i", "EVEN_NONSQUARE": "ii", "EVEN_SQUARE": "iii"}[self.value]


@dataclass(frozen=True)
class KSBranch:
    r: int
    distinct_factors: int
    factor_dim: int
    multiplicity_N: int

    @property
    def total_dim(self) -> int:
        return self.distinct_factors * self.factor_dim * self.multiplicity_N


@dataclass(frozen=True)
class KSReport:
    n: int
    delta: Optional[SquareClass]
    case: KSCase
    branches: Tuple[KSBranch, KSBranch]
    torus_bound: int
    warnings: Tuple[str, ...] = ()
    splitness_hint: Optional[bool] = None

    def branch(self, r: int) -> KSBranch:
        return next(b for b in self.branches if b.r == r)

    @property
    def selected(self) -> Optional[KSBranch]:
        """Branch picked by ``splitness_hint`` (split quaternion algebra means r = 1)."""
        if self.splitness_hint is None:
            return None
        return self.branch(1 if self.splitness_hint else 2)


def _check_n(n: int):
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")


def case_for(n: int, delta: SquareClass) -> KSCase:
    _check_n(n)
    if n % 2:
        return KSCase.ODD
    if square_class((-1) ** (n // 2) * delta.rep).is_square:
        return KSCase.EVEN_SQUARE
    return KSCase.EVEN_NONSQUARE


def branches_for(n: int, case: KSCase) -> Tuple[KSBranch, KSBranch]:
    _check_n(n)
    if (n % 2 == 1) != (case is KSCase.ODD):
        raise DomainError(f"case {case.value} is incompatible with n={n}")
    if case is KSCase.ODD:
        return (
            KSBranch(1, 1, 2 ** ((n - 1) // 2), 2 ** ((n - 1) // 2)),
            KSBranch(2, 1, 2 ** ((n + 1) // 2), 2 ** ((n - 3) // 2)),
        )
    h = n // 2
    if case is KSCase.EVEN_NONSQUARE:
        return KSBranch(1, 1, 2**h, 2 ** (h - 1)), KSBranch(2, 1, 2 ** (h + 1), 2 ** (h - 2))
    return KSBranch(1, 2, 2 ** (h - 1), 2 ** (h - 1)), KSBranch(2, 2, 2**h, 2 ** (h - 2))


def bound_for_case(n: int, case: KSCase) -> int:
    """Lower bound on the dimension of a complex torus carrying V in its cohomology."""
    _check_n(n)
    if case is KSCase.ODD:
        return 2 ** ((n - 3) // 2)
    if case is KSCase.EVEN_SQUARE:
        return 2 ** (n // 2 - 2)
    return 2 ** (n // 2 - 1)


def torus_bound(n: int, delta: SquareClass) -> int:
    return bound_for_case(n, case_for(n, delta))


def classify(n: int, delta: SquareClass, splitness_hint: Optional[bool] = None) -> KSReport:
    case = case_for(n, delta)
    branches = branches_for(n, case)
    for b in branches:
        if b.total_dim != 2 ** (n - 1):
            raise OracleMismatchError(f"branch r={b.r} does not fill C+ (dim {b.total_dim})")
    return KSReport(n, delta, case, branches, bound_for_case(n, case), splitness_hint=splitness_hint)


@dataclass(frozen=True)
class Diagnostics:
    signature: Tuple[int, int]
    oracle_checked: bool = False
    oracle_split: Optional[bool] = None
    warnings: Tuple[str, ...] = field(default_factory=tuple)


def classify_from_gram(
    space: QuadraticSpace,
    oracle: bool = False,
    oracle_max: Optional[int] = None,
    splitness_hint: Optional[bool] = None,
) -> Tuple[KSReport, Diagnostics]:
    """Diagonalize, take the discriminant and classify.

    With ``oracle`` set and ``n`` within the oracle bound, the even-n case
    label is cross-checked against a from-scratch computation of the center
    of the even Clifford algebra.
    """
    d = diagonalize(space)
    sig = signature(space)
    report = classify(space.n, discriminant(space), splitness_hint)
    warnings = []
    if sig[0] < 2:
        warnings.append(
            f"signature {sig}: no positive 2-plane, so no K3-type Hodge structure with "
            "this form as Beauville-Bogomolov form exists"
        )
    checked, split = False, None
    limit = oracle_max_n() if oracle_max is None else oracle_max
    if oracle and space.n <= limit:
        center = even_center(d, max_n=limit)
        checked = True
        split = center.split
        if space.n % 2 == 0:
            expected = report.case is KSCase.EVEN_SQUARE
            if split != expected or center_split_predicted(d) != expected:
                raise OracleMismatchError(
                    f"center splitness {split} disagrees with case {report.case.value}"
                )
        elif center.dim != 1:
            raise OracleMismatchError(f"odd n but C+ center has dimension {center.dim}")
    elif oracle:
        warnings.append(f"oracle skipped: n={space.n} exceeds bound {limit}")
    report = KSReport(
        report.n, report.delta, report.case, report.branches, report.torus_bound,
        tuple(warnings), splitness_hint,
    )
    return report, Diagnostics(sig, checked, split, tuple(warnings))


# Case labels as printed in the hyperkahler example, keyed by (sub-case).
_PRINTED_LABELS = {
    "odd": KSCase.ODD,
    "0mod4": KSCase.EVEN_NONSQUARE,
    "even-polarized": KSCase.ODD,
    "3mod4-polarized": KSCase.EVEN_NONSQUARE,
}


@dataclass(frozen=True)
class HyperkahlerPreset:
    """Classification of H^2 of a hyperkahler manifold from b2 and polarization only.

    The Beauville-Bogomolov form has signature (3, b2 - 3). Restricting to the
    orthogonal of an ample class drops one positive direction. Only the sign
    of ``delta`` is forced, so ``report`` is ``None`` when the sign does not
    decide whether ``(-1)^(n/2) delta`` is a square.
    """

    b2: int
    polarized: bool
    n: int
    signature: Tuple[int, int]
    delta_sign: int
    report: Optional[KSReport]
    sign_indeterminate: bool
    subcase: Optional[str]
    printed_case: Optional[KSCase]
    notes: Tuple[str, ...] = ()


def hyperkahler_presets(b2: int, polarized: bool, delta: Optional[SquareClass] = None) -> HyperkahlerPreset:
    if b2 < 5:
        raise DomainError(f"b2 must be >= 5, got {b2}")
    pos, neg = (2, b2 - 3) if polarized else (3, b2 - 3)
    n = pos + neg
    sign = (-1) ** neg
    if delta is not None and (delta.rep > 0) != (sign > 0):
        raise DomainError(f"discriminant {delta} has the wrong sign for signature {(pos, neg)}")

    if b2 % 2 and not polarized:
        subcase = "odd"
    elif b2 % 4 == 0 and not polarized:
        subcase = "0mod4"
    elif b2 % 2 == 0 and polarized:
        subcase = "even-polarized"
    elif b2 % 4 == 3 and polarized:
        subcase = "3mod4-polarized"
    else:
        subcase = None

    notes = []
    if n % 2:
        case: Optional[KSCase] = KSCase.ODD
    elif (-1) ** (n // 2) * sign < 0:
        case = KSCase.EVEN_NONSQUARE
    elif delta is not None:
        case = case_for(n, delta)
    else:
        case = None

    report = None
    if case is not None:
        report = KSReport(n, delta, case, branches_for(n, case), bound_for_case(n, case))
    printed = _PRINTED_LABELS.get(subcase)
    if printed is not None and case is not None and printed is not case:
        notes.append(f"printed label case ({printed.roman}) differs from derived case ({case.roman})")
    if case is None:
        notes.append("(-1)^(n/2) * delta > 0: supply the full discriminant to decide the case")
    return HyperkahlerPreset(
        b2, polarized, n, (pos, neg), sign, report, case is None, subcase, printed, tuple(notes)
    )
