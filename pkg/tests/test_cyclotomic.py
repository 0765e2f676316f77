from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given

from kcompletion.cyclotomic import ONE, ZERO, Cyclotomic, cyclotomic_polynomial, euler_phi, zeta

from conftest import cyclotomics


def test_zeta4_squared_is_minus_one():
    assert zeta(4) * zeta(4) == -1


def test_sum_of_cube_roots_vanishes():
    assert ONE + zeta(3) + zeta(3) ** 2 == ZERO


def test_inverse_of_zeta8():
    assert zeta(8).inverse() == zeta(8, 7)


@pytest.mark.parametrize("n,poly", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(n, poly):
    assert cyclotomic_polynomial(n) == poly


@pytest.mark.parametrize("n,phi", [(1, 1), (2, 1), (3, 2), (4, 2), (8, 4), (12, 4)])
def test_euler_phi(n, phi):
    assert euler_phi(n) == phi


def test_equality_across_conductors():
    # zeta_12^3 is zeta_4
    assert zeta(12, 3) == zeta(4)
    assert zeta(6, 2) == zeta(3)
    assert zeta(2) == -1
    assert Cyclotomic.rational(Fraction(1, 2)) == Fraction(1, 2)


def test_conjugate_and_norm():
    a = ONE - zeta(3, 2)
    assert a * a.conjugate() == 3
    assert zeta(5).conjugate() == zeta(5, 4)


def test_zero_is_not_invertible():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_unhashable():
    with pytest.raises(TypeError):
        hash(zeta(4))


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(cyclotomics())
def test_inverse(a):
    assume(a)
    assert a * a.inverse() == ONE


@given(cyclotomics(), cyclotomics())
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(cyclotomics())
def test_complex_embedding_agrees(a):
    b = a * a
    assert abs(b.to_complex() - a.to_complex() ** 2) < 1e-6
