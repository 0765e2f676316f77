from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kcompletion.laurent import LaurentPoly, parse_laurent
from kcompletion.reptheory import (
    VirtualCharacter,
    WeightMultiset,
    decompose_irreducibles,
    dominant_weights,
    hom_pairing,
    invariant_dim,
    is_invariant,
    lambda_minus_one,
    multiplicity,
    relative_weights,
    weyl_character,
    weyl_dimension,
)
from kcompletion.rootdatum import (
    PreconditionError,
    StructureError,
    TorsionPoint,
    datum_from_preset,
    levi_subdatum,
    torus_datum,
    torus_subdatum,
)

SL2 = datum_from_preset("SL2")


def P(text, rank=1):
    return parse_laurent(text, rank)


def test_sl2_characters():
    assert weyl_character(SL2, (1,)) == P("x + x^-1")
    assert weyl_character(SL2, (0,)) == 1
    assert weyl_character(SL2, (2,)) == P("x^2 + 1 + x^-2")
    assert weyl_dimension(SL2, (2,)) == 3


def test_character_needs_dominant_weight():
    with pytest.raises(PreconditionError):
        weyl_character(SL2, (-1,))


def test_virtual_character_checks_invariance():
    with pytest.raises(StructureError):
        VirtualCharacter(P("x"), SL2)


def test_lambda_minus_one():
    assert lambda_minus_one(WeightMultiset(1, ((2,), (-2,)))) == P("2 - x^2 - x^-2")
    assert lambda_minus_one(WeightMultiset(1, ())) == 1
    assert lambda_minus_one(WeightMultiset(1, ((0,),))) == 0


def test_relative_weights():
    t = torus_subdatum(SL2)
    assert relative_weights(SL2, t, "g_mod_z").weights == ((-2,), (2,))
    assert relative_weights(SL2, t, "g_mod_p").weights == ((-2,),)
    assert relative_weights(SL2, t, "p_mod_z").weights == ((2,),)
    a2 = datum_from_preset("A2")
    assert len(relative_weights(a2, levi_subdatum(a2, (0,)), "g_mod_z").weights) == 4


def test_invariant_dim_examples():
    assert invariant_dim(SL2, P("x + x^-1") ** 2) == 1
    assert invariant_dim(SL2, LaurentPoly.constant(1, 1)) == 1
    assert invariant_dim(SL2, P("x + x^-1")) == 0


def test_hom_pairing_examples():
    chi = P("x + x^-1")
    assert hom_pairing(SL2, chi, chi) == 1
    assert hom_pairing(torus_datum(1), chi, chi) == 2
    assert hom_pairing(SL2, LaurentPoly.constant(1, 1), chi) == 0


def test_hom_pairing_is_bilinear_not_sesquilinear():
    from kcompletion.cyclotomic import zeta

    chi = P("x + x^-1")
    assert hom_pairing(SL2, chi.scale(zeta(4)), chi) == zeta(4)


def test_decomposition_examples():
    assert decompose_irreducibles(SL2, P("x + x^-1") ** 2) == [((2,), 1), ((0,), 1)]
    assert decompose_irreducibles(SL2, weyl_character(SL2, (2,))) == [((2,), 1)]
    assert decompose_irreducibles(SL2, LaurentPoly.zero(1)) == []


def test_decompose_rejects_non_invariant():
    with pytest.raises(PreconditionError):
        decompose_irreducibles(SL2, P("x"))


@pytest.mark.parametrize("label", ["SL2", "SL3", "B2", "G2", "GL2", "GL3", "Sp4"])
def test_characters_are_invariant_with_weyl_dimension(label):
    d = datum_from_preset(label)
    for lam in dominant_weights(d, 3):
        chi = weyl_character(d, lam).poly
        assert is_invariant(chi, d)
        assert chi.evaluate_at_torsion(TorsionPoint.zero(d.rank)) == weyl_dimension(d, lam)


@pytest.mark.parametrize("label", ["SL3", "B2", "GL3"])
def test_lambda_multiplicativity_across_parabolic(label):
    d = datum_from_preset(label)
    for sub in [torus_subdatum(d), levi_subdatum(d, (0,))]:
        whole = relative_weights(d, sub, "g_mod_z", dualize=True)
        a = relative_weights(d, sub, "g_mod_p", dualize=True)
        b = relative_weights(d, sub, "p_mod_z", dualize=True)
        assert sorted((a + b).weights) == sorted(whole.weights)
        assert lambda_minus_one(whole) == lambda_minus_one(a) * lambda_minus_one(b)


@given(
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=4),
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=4),
)
def test_lambda_minus_one_is_multiplicative(s, t):
    a, b = WeightMultiset(2, tuple(s)), WeightMultiset(2, tuple(t))
    assert lambda_minus_one(a + b) == lambda_minus_one(a) * lambda_minus_one(b)


B2 = datum_from_preset("B2")


@given(
    st.lists(st.tuples(st.sampled_from(dominant_weights(B2, 3)), st.integers(-2, 2)), min_size=1, max_size=3),
)
def test_integration_agrees_with_peeling(combo):
    a = LaurentPoly.zero(2)
    for lam, c in combo:
        a = a + weyl_character(B2, lam).poly.scale(c)
    assert invariant_dim(B2, a) == multiplicity(decompose_irreducibles(B2, a), (0, 0))
