from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from kcompletion.series import TruncatedSeries, multi_indices, parse_series


def S(text, rank=1, order=4):
    return parse_series(text, rank, order)


@st.composite
def series(draw, rank=2, order=3):
    terms = {}
    for d in range(order + 1):
        for b in multi_indices(rank, d):
            if draw(st.booleans()):
                terms[b] = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
    return TruncatedSeries(rank, order, terms)


def test_multi_indices():
    assert multi_indices(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(multi_indices(3, 3)) == 10


def test_truncation():
    assert S("1 + t", order=2) ** 3 == S("1 + 3*t + 3*t^2", order=2)


def test_exp_linear():
    assert TruncatedSeries.exp_linear((2,), 3) == S("1 + 2*t + 2*t^2 + 4/3*t^3", order=3)


def test_inverse_of_geometric_series():
    assert S("1 - t").inverse() == S("1 + t + t^2 + t^3 + t^4")


def test_non_invertible():
    with pytest.raises(ZeroDivisionError):
        S("t").inverse()


def test_initial_form_and_valuation():
    s = S("t1^2 + 3*t1*t2 + t2^3", rank=2)
    assert s.valuation() == 2
    assert s.initial_form() == S("t1^2 + 3*t1*t2", rank=2)


def test_substitution_swaps_variables():
    s = S("t1 + 2*t2^2", rank=2)
    assert s.substitute_linear(((0, 1), (1, 0))) == S("t2 + 2*t1^2", rank=2)


def test_compose_univariate():
    f = S("1 + t + 1/2*t^2 + 1/6*t^3 + 1/24*t^4")
    u = S("t1 + t2", rank=2)
    assert f.compose_univariate(u) == TruncatedSeries.exp_linear((1, 1), 4)


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(series())
def test_inverse_property(a):
    assume(a.constant_term())
    assert a * a.inverse() == TruncatedSeries.constant(2, 3, 1)


@given(series(), series(), st.sampled_from([((0, 1), (1, 0)), ((1, 1), (0, 1)), ((-1, 0), (1, -1))]))
def test_linear_substitution_is_ring_hom(a, b, m):
    assert (a * b).substitute_linear(m) == a.substitute_linear(m) * b.substitute_linear(m)
