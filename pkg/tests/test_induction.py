from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kcompletion.induction import (
    check_reciprocity,
    induce,
    pushforward_fixed_points,
    restrict,
    verify_alternate_induction,
    verify_induction_axioms,
)
from kcompletion.laurent import LaurentPoly, parse_laurent
from kcompletion.reptheory import dominant_weights, orbit_sum, weyl_character
from kcompletion.rootdatum import (
    ConsistencyError,
    PreconditionError,
    StructureError,
    TorsionPoint,
    centralizer_subdatum,
    datum_from_preset,
    full_subdatum,
    levi_subdatum,
    torus_subdatum,
    weyl_elements,
)

SL2 = datum_from_preset("SL2")
T = torus_subdatum(SL2)


def P(text, rank=1):
    return parse_laurent(text, rank)


def one(r=1):
    return LaurentPoly.constant(r, 1)


def test_restriction():
    assert restrict(weyl_character(SL2, (1,)), T) == P("x + x^-1")
    assert restrict(one(), T) == 1
    assert restrict(weyl_character(SL2, (2,)), T) == P("x^2 + 1 + x^-2")


def test_induction_from_torus():
    assert induce(SL2, T, one()) == 2
    assert induce(SL2, T, P("x")) == P("x + x^-1")
    assert induce(SL2, T, P("x^2")) == P("x^2 + x^-2")


def test_induction_needs_invariant_input():
    sl3 = datum_from_preset("SL3")
    with pytest.raises(PreconditionError):
        induce(sl3, levi_subdatum(sl3, (0,)), P("x1", 2))


def test_restriction_needs_invariance():
    with pytest.raises(StructureError):
        restrict(P("x"), SL2)


def test_pushforward_on_projective_line():
    # tangent weight at the base point is the negative root, so the degree-d
    # line bundle on P^1 is x^(-d): x^-1 gives the standard representation
    assert pushforward_fixed_points(SL2, T, one()) == 1
    assert pushforward_fixed_points(SL2, T, P("x^-1")) == P("x + x^-1")
    assert pushforward_fixed_points(SL2, T, P("x")) == 0
    assert pushforward_fixed_points(SL2, T, P("x^2")) == -1


@pytest.mark.parametrize("label", ["SL2", "SL3", "B2", "G2", "GL2", "GL3"])
def test_lowest_weight_line_bundles_give_characters(label):
    d = datum_from_preset(label)
    t = torus_subdatum(d)
    W = weyl_elements(d)
    for lam in dominant_weights(d, 2):
        low = min((w.act(lam) for w in W), key=d.height)
        assert pushforward_fixed_points(d, t, LaurentPoly.monomial(low)) == weyl_character(d, lam)


def test_pushforward_over_a_point_and_non_levi():
    sl3 = datum_from_preset("SL3")
    chi = weyl_character(sl3, (1, 1)).poly
    assert pushforward_fixed_points(sl3, full_subdatum(sl3), chi) == chi
    b2 = datum_from_preset("B2")
    z = centralizer_subdatum(b2, TorsionPoint([Fraction(1, 2), 0]))
    with pytest.raises(PreconditionError):
        pushforward_fixed_points(b2, z, LaurentPoly.constant(2, 1))


def test_alternate_induction_examples():
    rep = verify_alternate_induction(SL2, T, [P(f"x^{m}") for m in range(-3, 4)])
    assert rep.passed and len(rep.cases) == 7
    rep = verify_alternate_induction(SL2, T, one())
    assert rep.cases[0].lhs == rep.cases[0].rhs == "2"
    a2 = datum_from_preset("A2")
    levi = levi_subdatum(a2, (0,))
    samples = [orbit_sum(levi, (i, j)) for i in range(-3, 4) for j in range(-3, 4) if abs(i) + abs(j) <= 3]
    assert verify_alternate_induction(a2, levi, samples).passed


def test_reciprocity_examples():
    chi = weyl_character(SL2, (1,)).poly
    rep = check_reciprocity(SL2, T, P("x"), chi)
    assert rep.cases[0].lhs == rep.cases[0].rhs == "1"
    rep = check_reciprocity(SL2, T, one(), one())
    assert rep.cases[0].lhs == rep.cases[0].rhs == "2"
    rep = check_reciprocity(SL2, full_subdatum(SL2), chi, chi)
    assert rep.cases[0].lhs == rep.cases[0].rhs == "1"


def test_induction_axiom_examples():
    a2 = datum_from_preset("A2")
    t = torus_subdatum(a2)
    chain = (t, levi_subdatum(a2, (0,)), a2)
    monos = [LaurentPoly.monomial((i, j)) for i in range(-2, 3) for j in range(-2, 3)]
    assert verify_induction_axioms(chain, samples=monos).passed
    assert verify_induction_axioms((t, t, a2), samples=monos).passed
    rep = verify_induction_axioms((T, T, SL2), pairs=[(P("x"), P("x + x^-1"))])
    assert rep.passed and rep.cases[0].lhs == "x^-2 + 2 + x^2"


@pytest.mark.parametrize("label", ["SL2", "SL3", "B2"])
def test_res_ind_on_invariants_scales_by_index(label):
    d = datum_from_preset(label)
    t = torus_subdatum(d)
    n = len(weyl_elements(d))
    for lam in dominant_weights(d, 2):
        chi = weyl_character(d, lam).poly
        assert restrict(induce(d, t, chi), t) == chi.scale(n)


SL3 = datum_from_preset("SL3")
LEVI = levi_subdatum(SL3, (1,))
SL3_IRREPS = [weyl_character(SL3, lam).poly for lam in dominant_weights(SL3, 2)]


@given(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.sampled_from(SL3_IRREPS),
    st.sampled_from([torus_subdatum(SL3), LEVI]),
)
def test_reciprocity_property(lam, b, sub):
    rep = check_reciprocity(SL3, sub, orbit_sum(sub, lam), b)
    assert rep.passed


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.sampled_from(SL3_IRREPS))
def test_projection_formula_property(lam, b):
    a = orbit_sum(LEVI, lam)
    assert verify_induction_axioms((torus_subdatum(SL3), LEVI, SL3), pairs=[(a, b)]).passed
