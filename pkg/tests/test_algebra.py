import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.algebra import (AlgebraError, FinAlgebra, GradedIdeal, NotAnIdeal, NotNilpotent,
                            check_quotient_complex_acyclic, cohomology_dims, complex_cohomology,
                            external_ideal, ideal_generated, internal_ideal, nilpotency_index,
                            opposite, power_ideal, quotient, radical, semisimple, validate)
from finalg.families import green, kronecker, random_family, r_family
from finalg.quiverpath import arrow_ideal

from samples import dg_samples, k1_dg, random_homogeneous

ONE = mpq(1)


def test_semisimple_valid():
    A = semisimple(2)
    assert validate(A).ok
    assert radical(A).is_zero()
    assert nilpotency_index(radical(A)) == 1


def test_perturbed_table_names_triple():
    A = kronecker(2)
    t = [[dict(c) for c in row] for row in A.table]
    c1, e2 = A.index("c1"), A.idempotents[1]
    # e2 * c1 = c1 in the path order; make it 2 c1
    i, j = (e2, c1) if A.table[e2][c1] else (c1, e2)
    t[i][j] = {c1: mpq(2)}
    B = FinAlgebra(A.labels, t, A.idempotents)
    rep = validate(B)
    assert not rep.ok
    assert rep.first() is not None and len(rep.first().witness) >= 2


def test_differential_on_idempotent_reported():
    A = kronecker(1, [1])
    d = [{} for _ in range(A.dim)]
    d[A.index("c1")] = {A.idempotents[0]: ONE}
    B = FinAlgebra(A.labels, A.table, A.idempotents, degrees=A.degrees, differential=d)
    rep = validate(B)
    assert not rep.ok
    assert rep.kinds() & {"leibniz", "grading", "idempotent", "differential"}


def test_radical_examples():
    K1 = kronecker(1)
    J = radical(K1)
    assert J.dim == 1 and J.contains({K1.index("c1"): ONE})
    assert nilpotency_index(J) == 2
    R = r_family(random_family(2, 1, 1, seed=1))
    JR = radical(R)
    assert R.dim == 8 and JR.dim == 6
    assert nilpotency_index(JR) == 4
    assert power_ideal(JR, 4).is_zero() and not power_ideal(JR, 3).is_zero()


@pytest.mark.parametrize("seed", [3, 4])
def test_radical_index_four(seed):
    R = r_family(random_family(3, 2, 1, seed=seed))
    assert nilpotency_index(radical(R)) == 4


def test_non_nilpotent_index_errors():
    A = semisimple(2)
    I = GradedIdeal(A, [{0: ONE}])
    with pytest.raises(NotNilpotent):
        nilpotency_index(I)


def test_quotients():
    K1 = kronecker(1)
    Q = quotient(K1, radical(K1))
    assert Q.dim == 2 and validate(Q).ok and radical(Q).is_zero()
    R = r_family(random_family(2, 1, 1, seed=2))
    S = quotient(R, radical(R))
    assert S.dim == 2 and radical(S).is_zero()
    for k in range(5):
        G = green(k)
        assert radical(quotient(G, radical(G))).is_zero()


def test_not_an_ideal():
    K1 = kronecker(1)
    with pytest.raises(NotAnIdeal):
        quotient(K1, GradedIdeal(K1, [{K1.idempotents[0]: ONE}]))


def test_dg_ideals_examples():
    A = k1_dg()
    c1, c2 = A.index("c1"), None
    # the degree -1 copy of the arrow maps to c1 under d
    for lab in A.labels:
        if "d1" in lab and A.d({A.index(lab): ONE}):
            c2 = A.index(lab)
    assert c2 is not None
    I = ideal_generated(A, [{c1: ONE}])
    lo, hi = internal_ideal(A, I), external_ideal(A, I)
    assert lo.dim == I.dim and hi.dim == I.dim  # c1 is a cycle: I is d-closed
    Jd = ideal_generated(A, [{c2: ONE}])
    lo, hi = internal_ideal(A, Jd), external_ideal(A, Jd)
    assert lo.dim < Jd.dim <= hi.dim
    assert all(Jd.contains(v) for v in lo.basis) and all(hi.contains(v) for v in Jd.basis)
    assert lo.is_d_closed() and hi.is_d_closed()
    assert check_quotient_complex_acyclic(A, Jd)
    assert check_quotient_complex_acyclic(A, radical(A))
    Z = GradedIdeal(A, [])
    assert internal_ideal(A, Z).is_zero() and external_ideal(A, Z).is_zero()


def test_cohomology_examples():
    assert {d: h for d, h in cohomology_dims(k1_dg()).items() if h} == {0: 2}
    G = green(3)
    H = cohomology_dims(G)
    assert sum(H.values()) == G.dim
    assert complex_cohomology({0: 1, 1: 1}, {0: [{0: ONE}]}) == {0: 0, 1: 0}


def test_opposite_involution():
    A = green(3)
    B = opposite(opposite(A))
    assert B.table == A.table
    assert validate(opposite(A)).ok


def test_radical_matches_arrow_ideal_on_samples():
    for k in range(5):
        A = green(k)
        J, arr = radical(A), arrow_ideal(A)
        assert J.dim == arr.dim and all(J.contains(v) for v in arr.basis)


@pytest.mark.parametrize("name", ["K1_nabla", "K2_nabla", "A3_h", "A4_h", "End_K1"])
def test_dg_samples_valid(name):
    A = dg_samples()[name]
    assert validate(A, check_primitive=False).ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["K1_nabla", "K2_nabla", "A3_h", "A4_h"]), st.integers(0, 10 ** 6))
def test_dg_ideal_sandwich(name, seed):
    A = dg_samples()[name]
    rng = random.Random(seed)
    I = ideal_generated(A, [random_homogeneous(A, rng, 2)])
    assert I.is_two_sided()
    lo, hi = internal_ideal(A, I), external_ideal(A, I)
    assert all(I.contains(v) for v in lo.basis)
    assert all(hi.contains(v) for v in I.basis)
    assert check_quotient_complex_acyclic(A, I)
