"""Exact rational linear algebra."""

from fractions import Fraction

from hypothesis import given, strategies as st

from brauer_kl.linalg import mat_mul, mat_vec, nullspace, rank, rref, solve, trace

F = Fraction

entries = st.integers(min_value=-6, max_value=6).map(Fraction)
matrices_3 = st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3)


def test_rref_identity_fixed():
    eye = [[F(1), F(0)], [F(0), F(1)]]
    reduced, pivots = rref(eye)
    assert reduced == eye
    assert pivots == [0, 1]


def test_rref_exact_fractions():
    m = [[F(1, 3), F(1)], [F(1), F(3)]]
    reduced, pivots = rref(m)
    assert pivots == [0]
    assert reduced[0] == [F(1), F(3)]
    assert reduced[1] == [F(0), F(0)]


def test_rank_examples():
    assert rank([[F(0)] * 3] * 3) == 0
    assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank([[F(1), F(2)], [F(3), F(4)]]) == 2


def test_nullspace_dimension_and_membership():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    basis = nullspace(m)
    assert len(basis) == 2
    for vec in basis:
        assert mat_vec(m, vec) == [F(0), F(0)]


def test_solve_exact_solution():
    m = [[F(2), F(1)], [F(1), F(3)]]
    rhs = [F(5), F(10)]
    x = solve(m, rhs)
    assert x is not None
    assert mat_vec(m, x) == rhs
    assert x == [F(1), F(3)]


def test_solve_inconsistent_returns_none():
    m = [[F(1), F(1)], [F(1), F(1)]]
    assert solve(m, [F(0), F(1)]) is None


def test_mat_mul_known_product():
    a = [[F(1), F(2)], [F(3), F(4)]]
    b = [[F(0), F(1)], [F(1), F(0)]]
    assert mat_mul(a, b) == [[F(2), F(1)], [F(4), F(3)]]


def test_trace():
    assert trace([[F(1, 2), F(9)], [F(0), F(3, 2)]]) == F(2)


@given(matrices_3)
def test_rank_plus_nullity(m):
    assert rank(m) + len(nullspace(m)) == 3


@given(matrices_3)
def test_nullspace_vectors_annihilate(m):
    for vec in nullspace(m):
        assert all(c == 0 for c in mat_vec(m, vec))


@given(matrices_3, st.lists(entries, min_size=3, max_size=3))
def test_solve_verifies_when_found(m, rhs):
    x = solve(m, rhs)
    if x is not None:
        assert mat_vec(m, x) == rhs
