from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kcompletion.rootdatum import (
    PRESETS,
    ResourceCapError,
    RootDatum,
    RootDatumError,
    TorsionPoint,
    centralizer_subdatum,
    coset_representatives,
    datum_from_preset,
    group_closure,
    levi_subdatum,
    orbit_and_stabilizer,
    torsion_grid,
    torus_subdatum,
    weyl_elements,
)

from conftest import torsion_points

F = Fraction


def test_sl2_preset():
    d = datum_from_preset("SL2")
    assert d.rank == 1 and set(d.roots) == {(2,), (-2,)}
    assert d.rho == (1,)


def test_gl2_preset():
    d = datum_from_preset("GL2")
    assert set(d.roots) == {(1, -1), (-1, 1)}
    assert d.coroots == d.roots


def test_a1xa1_preset():
    assert set(datum_from_preset("A1xA1").roots) == {(2, 0), (-2, 0), (0, 2), (0, -2)}


def test_unknown_preset():
    with pytest.raises(KeyError, match="known presets"):
        datum_from_preset("E8")


@pytest.mark.parametrize("label,order", [("SL2", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A1xA1", 4), ("GL3", 6), ("Sp4", 8)])
def test_weyl_orders(label, order):
    assert len(weyl_elements(datum_from_preset(label))) == order


def test_sl2_weyl_group_is_identity_and_negation():
    assert sorted(w.matrix for w in weyl_elements(datum_from_preset("SL2"))) == [((-1,),), ((1,),)]


def test_pairing_axiom_is_named():
    with pytest.raises(RootDatumError) as info:
        RootDatum("bad", 1, ((3,), (-3,)), ((1,), (-1,)), (0,))
    assert any(v.startswith("pairing") for v in info.value.violations)


def test_nonreduced_is_rejected():
    with pytest.raises(RootDatumError) as info:
        RootDatum("bc1", 1, ((1,), (-1,), (2,), (-2,)), ((2,), (-2,), (1,), (-1,)), (0,))
    assert any(v.startswith("reduced") for v in info.value.violations)


def test_weyl_cap(monkeypatch):
    monkeypatch.setenv("KCOMPLETION_WEYL_CAP", "5")
    d = datum_from_preset("B2")
    with pytest.raises(ResourceCapError):
        group_closure(d.simple_reflections, d.rank)


def test_centralizers():
    gl2 = datum_from_preset("GL2")
    assert centralizer_subdatum(gl2, TorsionPoint([F(1, 2), 0])).roots == ()
    sl2 = datum_from_preset("SL2")
    assert set(centralizer_subdatum(sl2, TorsionPoint([F(1, 2)])).roots) == set(sl2.roots)
    for label in PRESETS:
        d = datum_from_preset(label)
        assert set(centralizer_subdatum(d, TorsionPoint.zero(d.rank)).roots) == set(d.roots)


def test_orbits_sl2():
    d = datum_from_preset("SL2")
    od = orbit_and_stabilizer(d, TorsionPoint([F(1, 3)]))
    assert sorted(p.q for p in od.orbit) == [(F(1, 3),), (F(2, 3),)]
    assert [w.is_identity() for w in od.stabilizer] == [True]
    assert len(orbit_and_stabilizer(d, TorsionPoint([0])).stabilizer) == 2
    od = orbit_and_stabilizer(d, TorsionPoint([F(1, 2)]))
    assert len(od.orbit) == 1 and len(od.stabilizer) == 2


def test_coset_representative_counts():
    a1 = datum_from_preset("A1")
    assert len(coset_representatives(weyl_elements(a1), weyl_elements(a1))) == 1
    a2 = datum_from_preset("A2")
    assert len(coset_representatives(weyl_elements(a2), levi_subdatum(a2, (0,)).weyl_group)) == 3
    b2 = datum_from_preset("B2")
    assert len(coset_representatives(weyl_elements(b2), torus_subdatum(b2).weyl_group)) == 8


def test_torsion_points_canonical():
    assert TorsionPoint([F(5, 4), F(-1, 2)]) == TorsionPoint([F(1, 4), F(1, 2)])
    assert TorsionPoint.parse("1/2,0").order == 2
    assert len(torsion_grid(2, 3)) == 9


def test_simply_connected_flags():
    for label in PRESETS:
        assert datum_from_preset(label).simply_connected_commutator
    # PGL2-like: roots (1,-1) with coroots that do not span a saturated sublattice
    pgl = RootDatum("PGL2", 1, ((1,), (-1,)), ((2,), (-2,)), (0,))
    assert not pgl.simply_connected_commutator


@pytest.mark.parametrize("label", PRESETS)
def test_weyl_elements_permute_roots(label):
    d = datum_from_preset(label)
    for w in weyl_elements(d):
        assert sorted(w.act(a) for a in d.roots) == sorted(d.roots)


@pytest.mark.parametrize("label", ["SL3", "B2", "G2", "GL3"])
def test_coset_partition(label):
    d = datum_from_preset(label)
    W = weyl_elements(d)
    for subset in [(), (0,), (1,)]:
        W1 = levi_subdatum(d, subset).weyl_group
        reps = coset_representatives(W, W1)
        assert reps[0].is_identity()
        products = [(r * w1).matrix for r in reps for w1 in W1]
        assert sorted(products) == sorted(w.matrix for w in W)


@pytest.mark.parametrize("label", ["SL2", "SL3", "B2", "G2", "GL2", "GL3"])
def test_levi_inherits_torsion_freeness(label):
    d = datum_from_preset(label)
    for i in range(len(d.simple_indices)):
        assert levi_subdatum(d, (i,)).simply_connected_commutator


@given(st.sampled_from(["SL2", "SL3", "B2", "G2", "GL2"]), st.data())
def test_orbit_stabilizer(label, data):
    d = datum_from_preset(label)
    q = data.draw(torsion_points(rank=d.rank, orders=(1, 2, 3, 4, 5, 6, 8, 12)))
    od = orbit_and_stabilizer(d, q)
    assert len(od.orbit) * len(od.stabilizer) == len(weyl_elements(d))
    assert od.stabilizer_is_reflection_group


def test_to_json_roundtrip():
    for label in PRESETS:
        d = datum_from_preset(label)
        doc = d.to_json()
        assert RootDatum(doc["name"], doc["rank"], doc["roots"], doc["coroots"], doc["simple_indices"]) == d
