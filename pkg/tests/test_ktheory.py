import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.algebra import semisimple
from finalg.exactmat import IntMatrix
from finalg.families import green, kronecker, r_family, random_family, s_ring
from finalg.ktheory import (KTheoryError, Transvection, chi_inverse_transpose, chi_matrix, elementary,
                            factor_sl, product_of, random_sl, realize_green, unsigned_size,
                            verify_chi_multiplicative)
from finalg.twisted import canonical_v, twisted_product

from samples import k1_dg


def test_chi_semisimple_identity():
    assert chi_matrix(semisimple(3)) == IntMatrix.identity(3)


@pytest.mark.parametrize("n,m,k,seed", [(2, 1, 1, 1), (3, 2, 1, 3), (4, 2, 2, 6)])
def test_chi_family_closed_form(n, m, k, seed):
    X = chi_matrix(r_family(random_family(n, m, k, seed)))
    assert X.tolist() == [[m * (n - k) + 1, n + m * k * (n - k)], [m, m * k + 1]]
    assert abs(X.det()) == 1


def test_chi_kronecker_shift():
    assert chi_matrix(kronecker(1)).tolist() == [[1, 1], [0, 1]]
    assert chi_matrix(kronecker(1, [1])).tolist() == [[1, -1], [0, 1]]


def test_inverse_transpose():
    X = chi_matrix(green(3))
    Y = chi_inverse_transpose(X)
    assert (Y.T @ X).tolist() == IntMatrix.identity(2).tolist()
    with pytest.raises(KTheoryError):
        chi_inverse_transpose(IntMatrix([[2, 0], [0, 1]]))


def test_multiplicative_k1_k1():
    K1 = kronecker(1)
    C = twisted_product(canonical_v(s_ring(K1), s_ring(K1)))
    assert verify_chi_multiplicative(K1, K1, C)
    assert chi_matrix(C).tolist() == [[1, 2], [0, 1]]


def test_chi_ignores_nabla():
    D = k1_dg()
    sp = D.meta["tensor"]
    assert verify_chi_multiplicative(sp.A, sp.B, D)
    assert chi_matrix(D).tolist() == [[1, 0], [0, 1]]


def test_factor_examples():
    assert factor_sl(IntMatrix.identity(3)) == []
    M = IntMatrix([[0, -1], [1, 0]])
    w = factor_sl(M)
    assert product_of(w, 2) == M and len(w) == 3
    with pytest.raises(KTheoryError):
        factor_sl(IntMatrix([[2, 0], [0, 1]]))


def test_transvection_display():
    t = Transvection(0, 1, -1, 2)
    assert str(t) == "E12(-2)" and t.matrix(2) == elementary(2, 0, 1, -2)


def test_unsigned_size_counts_dimension():
    M = IntMatrix([[0, -1], [1, 0]])
    C = realize_green(M)
    assert unsigned_size(factor_sl(M), 2) == C.dim
    assert chi_matrix(C) == M
    assert realize_green(IntMatrix.identity(3)).dim == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10 ** 6))
def test_factor_round_trip(n, seed):
    M = random_sl(n, random.Random(seed))
    assert M.det() == 1
    assert max(abs(x) for r in M.tolist() for x in r) <= 50
    assert product_of(factor_sl(M), n) == M


@pytest.mark.parametrize("seed", [0, 1])
def test_realize_sl3(seed):
    M = random_sl(3, random.Random(100 + seed), max_entry=6)
    assert chi_matrix(realize_green(M)) == M
