from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from kcompletion.cyclotomic import Cyclotomic, zeta
from kcompletion.linalg import (
    EchelonBasis,
    TrackedEchelon,
    integer_matrix_inverse,
    nullspace_rational,
    rank,
    rational_rank,
    smith_diagonal,
    solve_rational,
)

F = Fraction


def test_rank_over_cyclotomic_field():
    # (1, z4) and (z4, -1) are proportional over Q(i)
    rows = [{0: Cyclotomic.rational(1), 1: zeta(4)}, {0: zeta(4), 1: Cyclotomic.rational(-1)}]
    assert rank(rows) == 1


def test_solve_and_nullspace():
    a = [[1, 2], [3, 4]]
    assert solve_rational(a, [5, 6]) == [F(-4), F(9, 2)]
    assert nullspace_rational([[1, 1, 1]], 3) and len(nullspace_rational([[1, 1, 1]], 3)) == 2
    assert rational_rank([[1, 2], [2, 4]]) == 1


def test_smith_and_inverse():
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    m = ((0, 1), (-1, 0))
    inv = integer_matrix_inverse(m)
    assert [[sum(m[i][k] * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]


def test_tracked_echelon_expresses_combinations():
    t = TrackedEchelon()
    one = Cyclotomic.rational(1)
    t.add({0: one, 1: one}, "a")
    t.add({1: one}, "b")
    residual, combo = t.express({0: Cyclotomic.rational(2), 1: Cyclotomic.rational(5)})
    assert not residual
    assert combo["a"] == 2 and combo["b"] == 3


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5))
def test_echelon_rank_matches_rref_rank(mat):
    e = EchelonBasis()
    for row in mat:
        e.add({i: Cyclotomic.rational(x) for i, x in enumerate(row) if x})
    assert e.rank == rational_rank(mat)
