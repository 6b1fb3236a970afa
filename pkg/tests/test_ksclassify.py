import random
from fractions import Fraction as F

import pytest

from kuga_satake.clifford import even_center
from kuga_satake.errors import DomainError
from kuga_satake.ksclassify import (
    KSCase,
    bound_for_case,
    case_for,
    classify,
    classify_from_gram,
    hyperkahler_presets,
    torus_bound,
)
from kuga_satake.quadspace import (
    QuadraticSpace,
    SquareClass,
    diagonal,
    discriminant,
    hyperbolic_sum,
    square_class,
)

from oracles import random_diagonal


def branch_tuple(b):
    return b.r, b.distinct_factors, b.factor_dim, b.multiplicity_N


def test_three_hyperbolic_planes():
    r = classify(6, SquareClass(-1))
    assert r.case is KSCase.EVEN_SQUARE
    assert [branch_tuple(b) for b in r.branches] == [(1, 2, 4, 4), (2, 2, 8, 2)]
    assert r.torus_bound == 2


def test_n7():
    for delta in (1, -1, 2, -30):
        r = classify(7, SquareClass(delta))
        assert r.case is KSCase.ODD
        assert [branch_tuple(b) for b in r.branches] == [(1, 1, 8, 8), (2, 1, 16, 4)]
        assert r.torus_bound == 4


def test_n4_minus_one():
    r = classify(4, SquareClass(-1))
    assert r.case is KSCase.EVEN_NONSQUARE
    assert [branch_tuple(b) for b in r.branches] == [(1, 1, 4, 2), (2, 1, 8, 1)]
    assert r.torus_bound == 2


def test_torus_bound_examples():
    assert torus_bound(21, SquareClass(1)) == 512
    assert torus_bound(6, SquareClass(-1)) == 2
    assert torus_bound(6, SquareClass(1)) == 4


def test_small_n_rejected():
    with pytest.raises(DomainError):
        classify(2, SquareClass(1))
    with pytest.raises(DomainError):
        torus_bound(1, SquareClass(1))


@pytest.mark.parametrize("n", range(3, 17))
def test_conservation_and_bound(n):
    for delta in (1, -1, 2, -3):
        r = classify(n, SquareClass(delta))
        for b in r.branches:
            assert b.total_dim == 2 ** (n - 1)
        assert r.torus_bound * 2 == min(b.factor_dim for b in r.branches)


def test_bound_monotone_within_case():
    for case, ns in ((KSCase.ODD, range(3, 17, 2)), (KSCase.EVEN_SQUARE, range(4, 17, 2)),
                     (KSCase.EVEN_NONSQUARE, range(4, 17, 2))):
        bounds = [bound_for_case(n, case) for n in ns]
        assert all(a < b for a, b in zip(bounds, bounds[1:]))


def test_square_rescaling_invariance():
    space = diagonal([1, 2, -3, 5])
    scaled = diagonal([9 * x for x in (1, 2, -3, 5)])
    assert classify_from_gram(space)[0] == classify_from_gram(scaled)[0]


def test_case_depends_on_signed_discriminant():
    # n = 6: (-1)^3 delta is a square iff delta = -1
    assert case_for(6, SquareClass(-1)) is KSCase.EVEN_SQUARE
    assert case_for(6, SquareClass(1)) is KSCase.EVEN_NONSQUARE
    # n = 8: (+1) delta
    assert case_for(8, SquareClass(1)) is KSCase.EVEN_SQUARE


def test_classify_from_gram_examples():
    r, d = classify_from_gram(hyperbolic_sum(3), oracle=True)
    assert (r.n, r.delta.rep, r.case) == (6, -1, KSCase.EVEN_SQUARE)
    assert d.signature == (3, 3) and not r.warnings and d.oracle_split is True
    r, _ = classify_from_gram(diagonal([1, 1, 1, -1]), oracle=True)
    assert (r.n, r.delta.rep, r.case) == (4, -1, KSCase.EVEN_NONSQUARE)
    r, d = classify_from_gram(diagonal([-1, -1, -1]))
    assert r.case is KSCase.ODD and d.signature == (0, 3)
    assert any("positive 2-plane" in w for w in r.warnings)


def test_oracle_skipped_above_bound():
    r, d = classify_from_gram(diagonal([1] * 9), oracle=True)
    assert not d.oracle_checked and any("oracle skipped" in w for w in r.warnings)


def test_splitness_hint():
    r = classify(6, SquareClass(-1), splitness_hint=False)
    assert r.selected.r == 2 and r.selected.factor_dim == 8
    assert classify(6, SquareClass(-1), splitness_hint=True).selected.r == 1
    assert classify(6, SquareClass(-1)).selected is None


@pytest.mark.parametrize("n", [4, 6, 8])
def test_case_agrees_with_center(n):
    rng = random.Random(n)
    for _ in range(8):
        d = random_diagonal(rng, n)
        r = classify(n, square_class(d.determinant()))
        assert (r.case is KSCase.EVEN_SQUARE) == even_center(d).split


def test_non_diagonal_gram_pipeline():
    space = QuadraticSpace([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 0, F(1, 2)], [0, 0, F(1, 2), 0]])
    r, d = classify_from_gram(space, oracle=True)
    assert discriminant(space).rep == -3
    assert r.case is KSCase.EVEN_NONSQUARE and d.oracle_checked


# ---- hyperkahler presets ---------------------------------------------------

def dims(p):
    return sorted(b.factor_dim for b in p.report.branches)


def test_preset_odd_unpolarized():
    for b2 in (7, 23):
        p = hyperkahler_presets(b2, polarized=False)
        assert p.report.case is KSCase.ODD
        assert dims(p) == [2 ** ((b2 - 1) // 2), 2 ** ((b2 + 1) // 2)]


def test_preset_zero_mod_four():
    p = hyperkahler_presets(8, polarized=False)
    assert p.delta_sign == -1
    assert p.report.case is KSCase.EVEN_NONSQUARE
    assert dims(p) == [2 ** 4, 2 ** 5]


def test_preset_even_polarized():
    for b2 in (8, 22):
        p = hyperkahler_presets(b2, polarized=True)
        assert p.n == b2 - 1 and p.signature == (2, b2 - 3)
        assert p.report.case is KSCase.ODD
        assert dims(p) == [2 ** (b2 // 2 - 1), 2 ** (b2 // 2)]
        assert p.printed_case is KSCase.ODD and not p.notes


def test_preset_three_mod_four_polarized():
    for b2 in (7, 23):
        p = hyperkahler_presets(b2, polarized=True)
        assert p.delta_sign == 1
        assert p.report.case is KSCase.EVEN_NONSQUARE
        assert dims(p) == [2 ** ((b2 - 1) // 2), 2 ** ((b2 + 1) // 2)]


def test_preset_indeterminate():
    p = hyperkahler_presets(22, polarized=False)
    assert p.sign_indeterminate and p.report is None
    # b2 = 22 unpolarized: n/2 = 11 odd, delta < 0, so (-1)^11 delta > 0
    resolved = hyperkahler_presets(22, polarized=False, delta=SquareClass(-1))
    assert resolved.report.case is KSCase.EVEN_SQUARE
    resolved = hyperkahler_presets(22, polarized=False, delta=SquareClass(-2))
    assert resolved.report.case is KSCase.EVEN_NONSQUARE
    with pytest.raises(DomainError):
        hyperkahler_presets(22, polarized=False, delta=SquareClass(3))


def test_preset_rejects_small_b2():
    with pytest.raises(DomainError):
        hyperkahler_presets(4, polarized=False)
