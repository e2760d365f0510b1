from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.exactmat import (Echelon, IntMatrix, RatMatrix, column_space, format_q, kernel_basis,
                             rref, same_column_span, subspace_intersection, to_q)

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_to_q_and_format():
    assert to_q("3/6") == mpq(1, 2)
    assert to_q(Fraction(2, 4)) == mpq(1, 2)
    assert format_q(mpq(-3, 1)) == "-3"
    assert format_q(mpq(2, 3)) == "2/3"
    with pytest.raises((TypeError, ValueError)):
        to_q(0.5)


def test_rref_examples():
    R, piv, rank = rref(RatMatrix.identity(3))
    assert R == RatMatrix.identity(3) and piv == [0, 1, 2] and rank == 3
    R, piv, rank = rref(RatMatrix.zeros(2, 4))
    assert R.is_zero() and piv == [] and rank == 0
    R, piv, rank = rref(RatMatrix([[1, 2], [2, 4]]))
    assert rank == 1 and piv == [0]
    assert R.tolist() == [[1, 2], [0, 0]]


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(3)).ncols == 0
    assert kernel_basis(RatMatrix.zeros(3, 3)).ncols == 3
    K = kernel_basis(RatMatrix([[1, 1]]))
    assert K.ncols == 1
    assert same_column_span(K, RatMatrix([[1], [-1]]))


def test_intersection_examples():
    U = RatMatrix([[1, 0], [0, 1], [1, 1]])
    assert same_column_span(subspace_intersection(U, U), U)
    lines = subspace_intersection(RatMatrix([[1], [0]]), RatMatrix([[0], [1]]))
    assert lines.ncols == 0
    P1 = RatMatrix([[1, 0], [0, 1], [0, 0]])
    P2 = RatMatrix([[1, 0], [0, 0], [0, 1]])
    assert subspace_intersection(P1, P2).ncols == 1
    with pytest.raises(ValueError):
        subspace_intersection(RatMatrix([[1], [0]]), RatMatrix([[1], [0], [0]]))


def test_int_matrix():
    M = IntMatrix([[2, 1], [1, 1]])
    assert M.det() == 1
    assert (M @ M.inverse()).tolist() == [[1, 0], [0, 1]]


def test_echelon():
    e = Echelon()
    assert e.add({0: mpq(1), 1: mpq(1)}) is not None
    assert e.add({0: mpq(2), 1: mpq(2)}) is None
    assert e.contains({0: mpq(-1), 1: mpq(-1)})
    assert not e.contains({1: mpq(1)})
    assert len(e) == 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_properties(rows):
    M = RatMatrix(rows)
    K = kernel_basis(M)
    assert (M @ K).is_zero() if K.ncols else True
    assert K.rank() == K.ncols
    assert M.rank() + K.ncols == M.ncols


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=16, max_size=16))
def test_rref_unique_under_row_operations(rows, mix):
    M = RatMatrix(rows)
    n = M.nrows
    # left-multiply by an invertible lower unitriangular matrix
    L = [[(1 if i == j else (mix[i * 4 + j] if j < i else 0)) for j in range(n)] for i in range(n)]
    R1, p1, r1 = rref(M)
    R2, p2, r2 = rref(RatMatrix(L) @ M)
    assert (R1, p1, r1) == (R2, p2, r2)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 3), matrices(4, 3))
def test_intersection_symmetric(a, b):
    U = RatMatrix([r[:len(a[0])] for r in a])
    W = RatMatrix(b[:len(a)] if len(b) >= len(a) else b + [[0] * len(b[0])] * (len(a) - len(b)))
    I1, I2 = subspace_intersection(U, W), subspace_intersection(W, U)
    assert same_column_span(I1, I2)
    dim_sum = column_space(U.hstack(W)).ncols
    assert I1.ncols == column_space(U).ncols + column_space(W).ncols - dim_sum
