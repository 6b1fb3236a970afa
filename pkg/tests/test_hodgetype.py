import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from kuga_satake.errors import DomainError, ParseError, ShapeError
from kuga_satake.hodgetype import (
    HodgeType,
    direct_sum,
    dual,
    is_abelian_type,
    is_k3_type,
    parse_hodge_type,
    purity,
    tate_twist,
    tensor,
    tensor_all,
    weight1_tensor_factor,
)

from oracles import factor_candidates, random_factor_list

AB = HodgeType({(0, 1): 1, (1, 0): 1})
Q0 = HodgeType({(0, 0): 1})

quarter = st.fractions(min_value=-2, max_value=2, max_denominator=4)


@st.composite
def hodge_types(draw):
    entries = {}
    for _ in range(draw(st.integers(1, 3))):
        p, q, m = draw(quarter), draw(quarter), draw(st.integers(1, 3))
        entries[(p, q)] = m
        entries[(q, p)] = m
    return HodgeType(entries)


def test_tensor_examples():
    assert tensor(HodgeType({(1, 0): 1}, real=False), HodgeType({(0, 1): 1}, real=False)) == HodgeType({(1, 1): 1})
    assert tensor(AB, Q0) == AB
    assert tensor(AB, AB) == HodgeType({(0, 2): 1, (1, 1): 2, (2, 0): 1})
    assert tensor(Q0, Q0) == Q0


def test_tensor_of_non_real_halves():
    # {(1,0)} alone is not conjugation-symmetric
    with pytest.raises(DomainError):
        HodgeType({(1, 0): 1})


def test_dual_twist_examples():
    k3 = HodgeType({(1, -1): 1, (0, 0): 1, (-1, 1): 1})
    assert dual(k3) == k3
    assert tate_twist(Q0, F(3, 2)) == HodgeType({(F(-3, 2), F(-3, 2)): 1})
    assert dual(dual(AB)) == AB


def test_purity_and_shapes():
    k3 = HodgeType({(1, -1): 1, (0, 0): 19, (-1, 1): 1})
    assert is_k3_type(k3) and purity(k3) == 0 and k3.dim == 21
    g = HodgeType({(0, 1): 4, (1, 0): 4})
    assert is_abelian_type(g) and purity(g) == 1
    assert purity(HodgeType({(0, 0): 1, (1, 0): 1, (0, 1): 1})) is None
    assert not is_k3_type(HodgeType({(1, -1): 2, (-1, 1): 2}))
    assert not is_abelian_type(HodgeType({(1, 1): 1}))


def test_invalid_multiplicity():
    with pytest.raises(DomainError):
        HodgeType({(0, 0): 0})
    with pytest.raises(DomainError):
        HodgeType({})


@given(hodge_types(), hodge_types())
def test_tensor_dimension_and_reality(a, b):
    t = tensor(a, b)
    assert t.dim == a.dim * b.dim
    assert direct_sum(a, b).dim == a.dim + b.dim
    assert t.is_real() and direct_sum(a, b).is_real()
    assert dual(a).is_real() and tate_twist(a, F(1, 3)).is_real()


@given(hodge_types(), hodge_types())
def test_weight_additivity(a, b):
    if purity(a) is not None and purity(b) is not None:
        assert purity(tensor(a, b)) == purity(a) + purity(b)


@given(hodge_types(), quarter, quarter)
def test_twist_composes(a, c1, c2):
    assert tate_twist(a, c1 + c2) == tate_twist(tate_twist(a, c1), c2)
    assert tate_twist(a, c1) == tensor(a, HodgeType({(-c1, -c1): 1}))
    assert dual(tate_twist(a, c1)) == tate_twist(dual(a), -c1)


def test_factor_examples():
    assert weight1_tensor_factor([AB, Q0]) == (0, [0])
    a = HodgeType({(F(3, 4), F(-1, 4)): 1, (F(-1, 4), F(3, 4)): 1})
    b = HodgeType({(F(1, 4), F(1, 4)): 1})
    assert tensor(a, b) == AB
    assert weight1_tensor_factor([a, b]) == (0, [F(1, 4)])
    c = HodgeType({(F(1, 2), F(1, 2)): 1})
    e = HodgeType({(F(1, 2), F(-1, 2)): 1, (F(-1, 2), F(1, 2)): 1})
    assert weight1_tensor_factor([c, e]) == (1, [F(1, 2)])


def test_factor_rejects_non_abelian_product():
    with pytest.raises(ShapeError):
        weight1_tensor_factor([AB, AB])
    with pytest.raises(ShapeError):
        weight1_tensor_factor([HodgeType({(1, -1): 1, (-1, 1): 1})])


def test_parse_hodge_type():
    assert parse_hodge_type("(0,1):2, (1,0):2") == HodgeType({(0, 1): 2, (1, 0): 2})
    assert parse_hodge_type("(3/4,-1/4),(-1/4,3/4)").dim == 2
    with pytest.raises(ParseError):
        parse_hodge_type("(0,1")
    with pytest.raises(ParseError):
        parse_hodge_type("")


def test_tensor_all_single():
    assert tensor_all([AB]) == AB


def test_factor_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(100):
        factors, i, consts = random_factor_list(rng)
        rng.shuffle(factors)
        hits = factor_candidates(factors)
        assert len(hits) == 1
        assert weight1_tensor_factor(factors) == hits[0]
