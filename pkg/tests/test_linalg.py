from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qchl.linalg import RatMatrix, invert, kernel_basis, mat_mul, rank, rref, solve


def test_rref_identity():
    m = RatMatrix.identity(3)
    reduced, rk, pivots = rref(m)
    assert rk == 3 and pivots == [0, 1, 2] and reduced == m


def test_rref_zero():
    m = RatMatrix.zero(2, 4)
    _, rk, pivots = rref(m)
    assert rk == 0 and pivots == []


def test_rref_rank_one():
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    reduced, rk, pivots = rref(m)
    assert rk == 1 and pivots == [0]
    assert reduced.entries == ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(0)))


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(4)).cols == 0


def test_kernel_zero_full():
    kb = kernel_basis(RatMatrix.zero(2, 3))
    assert kb.cols == 3 and kb == RatMatrix.identity(3)


def test_kernel_single_row():
    kb = kernel_basis(RatMatrix.from_rows([[1, 2]]))
    assert kb.cols == 1
    assert kb.column(0) == (Fraction(-2), Fraction(1))


def test_solve_examples():
    assert solve(RatMatrix.identity(3), [1, 0, 0]) == [1, 0, 0]
    assert solve(RatMatrix.from_rows([[1, 1]]), [2]) == [2, 0]
    assert solve(RatMatrix.from_rows([[0]]), [1]) is None


def test_solve_is_deterministic_particular_solution():
    m = RatMatrix.from_rows([[1, 2, 3], [0, 0, 1]])
    x = solve(m, [6, 1])
    assert x == [3, 0, 1]
    assert m.apply(x) == [6, 1]


def test_invert():
    m = RatMatrix.from_rows([[2, 1], [1, 1]])
    inv = invert(m)
    assert mat_mul(m, inv) == RatMatrix.identity(2)
    assert invert(RatMatrix.from_rows([[1, 2], [2, 4]])) is None


def test_matrix_multiplication_shapes():
    a = RatMatrix.from_rows([[1, 2, 3]])
    b = RatMatrix.from_rows([[1], [0], [Fraction(1, 3)]])
    assert mat_mul(a, b).entries == ((Fraction(2),),)
    with pytest.raises(ValueError):
        mat_mul(a, a)


small_rationals = st.builds(
    Fraction, st.integers(-4, 4), st.integers(1, 3)
)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(small_rationals, min_size=4, max_size=4),
        min_size=1,
        max_size=5,
    )
)
def test_rank_nullity_and_kernel_annihilation(rows):
    m = RatMatrix.from_rows(rows, ncols=4)
    kb = kernel_basis(m)
    assert rank(m) + kb.cols == m.cols
    for c in range(kb.cols):
        v = [kb[r, c] for r in range(kb.rows)]
        assert all(x == 0 for x in m.apply(v))
