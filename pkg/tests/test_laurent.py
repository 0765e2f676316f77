from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from kcompletion.cyclotomic import zeta
from kcompletion.laurent import DivisibilityError, LaurentPoly, RationalFn, parse_laurent, weyl_act
from kcompletion.rootdatum import TorsionPoint, datum_from_preset, weyl_elements

from conftest import laurent_polys, torsion_points


def P(text, rank=1):
    return parse_laurent(text, rank)


def test_exact_div_weyl_denominator():
    assert P("x^2 - x^-2").exact_div(P("x - x^-1")) == P("x + x^-1")


def test_square():
    assert P("x + x^-1") * P("x + x^-1") == P("x^2 + 2 + x^-2")


def test_exact_div_reports_remainder():
    with pytest.raises(DivisibilityError) as info:
        P("x + 1").exact_div(P("x - 1"))
    assert info.value.remainder == LaurentPoly.constant(1, 2)


def test_reflection_action():
    s = datum_from_preset("SL2").simple_reflections[0]
    assert weyl_act(s, P("x")) == P("x^-1")
    assert weyl_act(s, P("x^2 + 3")) == P("x^-2 + 3")


def test_dual():
    assert P("2*x - x^3").dual() == P("2*x^-1 - x^-3")
    assert LaurentPoly.constant(1, 1).dual() == 1


def test_constant_term():
    assert (P("x + x^-1") ** 2).constant_term() == 2
    assert P("x^5").constant_term() == 0
    assert LaurentPoly.constant(1, 7).constant_term() == 7


def test_evaluation_at_torsion():
    q = TorsionPoint([Fraction(1, 4)])
    assert P("x").evaluate_at_torsion(q) == zeta(4)
    assert P("x + x^-1").evaluate_at_torsion(q) == 0
    assert P("3*x^2 - x + 5").evaluate_at_torsion(TorsionPoint.zero(1)) == 7


def test_rational_function_simplifies():
    f = RationalFn(P("x"), P("1 - x^-2")) + RationalFn(P("x^-1"), P("1 - x^2"))
    assert f.to_laurent() == P("x + x^-1")


def test_parse_render_roundtrip_with_cyclotomic_coefficients():
    p = P("2*z4*x1 - 1/3*x2^-2 + z3^2", rank=2)
    assert parse_laurent(str(p), 2) == p


def test_rank_mismatch():
    with pytest.raises(ValueError):
        P("x") + P("x1", rank=2)


@given(laurent_polys(rank=2, rational=False), laurent_polys(rank=2, rational=False))
def test_render_parse_roundtrip(a, b):
    p = a * b
    assert parse_laurent(str(p), 2) == p


@given(laurent_polys(), laurent_polys())
def test_exact_div_inverts_multiplication(a, b):
    assume(b)
    assert (a * b).exact_div(b) == a


@given(laurent_polys(rank=2), laurent_polys(rank=2))
def test_exact_div_inverts_multiplication_rank2(a, b):
    assume(b)
    assert (a * b).exact_div(b) == a


W_SL3 = weyl_elements(datum_from_preset("SL3"))


@given(laurent_polys(rank=2), laurent_polys(rank=2), st.sampled_from(W_SL3), st.sampled_from(W_SL3))
def test_weyl_action_is_ring_hom_and_group_action(a, b, v, w):
    assert weyl_act(w, a * b) == weyl_act(w, a) * weyl_act(w, b)
    assert weyl_act(w, a + b) == weyl_act(w, a) + weyl_act(w, b)
    assert weyl_act(v * w, a) == weyl_act(v, weyl_act(w, a))


@given(laurent_polys(rank=2, rational=False), laurent_polys(rank=2), torsion_points(rank=2))
def test_evaluation_is_ring_hom(a, b, q):
    assert (a * b).evaluate_at_torsion(q) == a.evaluate_at_torsion(q) * b.evaluate_at_torsion(q)
    assert (a + b).evaluate_at_torsion(q) == a.evaluate_at_torsion(q) + b.evaluate_at_torsion(q)


@given(laurent_polys(rank=2), torsion_points(rank=2), st.sampled_from(W_SL3))
def test_evaluation_equivariance(a, q, w):
    assert weyl_act(w, a).evaluate_at_torsion(q) == a.evaluate_at_torsion(q.act(w.inverse))


@given(laurent_polys(rank=2), st.sampled_from(W_SL3))
def test_constant_term_is_weyl_invariant(a, w):
    assert weyl_act(w, a).constant_term() == a.constant_term()


@given(laurent_polys(rank=2))
def test_dual_is_involution(a):
    assert a.dual().dual() == a
    assert a.evaluate_at_torsion(TorsionPoint.zero(2)) == a.sum_of_coefficients()
