import pytest
from gmpy2 import mpq

from finalg.algebra import cohomology_dims, radical, semisimple, validate
from finalg.families import green, kronecker, r_family, random_family, s_ring, twprod_decomposition
from finalg.ktheory import chi_matrix
from finalg.repmod import global_dimension
from finalg.twisted import (NablaError, RRing, TwistingError, TwistingMap, canonical_v, cyclic_twist,
                            dg_twisted_product, inclusion_A, inclusion_B, root_algebra, tensor_over_R,
                            twisted_product, verify_twisting)

from samples import k1_dg

ONE = mpq(1)


def test_tensor_over_field_is_ordinary():
    A, B = root_algebra(2, 3), root_algebra(3, 2)
    sp = tensor_over_R(RRing.over_semisimple(A), RRing.over_semisimple(B))
    assert sp.dim == A.dim * B.dim


def test_tensor_over_s_counts_components():
    for a, b in [(1, 1), (1, 2), (2, 3)]:
        A, B = kronecker(a), kronecker(b)
        sp = tensor_over_R(s_ring(A), s_ring(B))
        # sum over vertices r of dim(A e_r) * dim(e_r B)
        expect = 0
        for e in range(2):
            left = sum(1 for i in range(A.dim) if A.mul({i: ONE}, {A.idempotents[e]: ONE}))
            right = sum(1 for j in range(B.dim) if B.mul({B.idempotents[e]: ONE}, {j: ONE}))
            expect += left * right
        assert sp.dim == expect


def test_canonical_v_rules():
    K1 = kronecker(1)
    tau = canonical_v(s_ring(K1), s_ring(K1))
    c = K1.index("c1")
    assert tau.apply({c: ONE}, {c: ONE}) == {}
    x = tau.apply(K1.unit, {c: ONE})
    assert x == tau.space.elem({c: ONE}, K1.unit)
    assert verify_twisting(tau).ok


def test_kronecker_products():
    K1 = kronecker(1)
    for n in range(1, 4):
        C = twisted_product(canonical_v(s_ring(K1), s_ring(kronecker(n - 1))))
        assert C.dim == kronecker(n).dim
        assert chi_matrix(C) == chi_matrix(kronecker(n))
        assert radical(C).dim == n


def test_green_step():
    K1 = kronecker(1)
    for n in (1, 2):
        G = green(2 * n)
        C = twisted_product(canonical_v(s_ring(K1), s_ring(G)))
        assert C.dim == green(2 * n + 1).dim
        assert global_dimension(C).value == 2 * n + 1


def test_cyclic_algebra_quaternions():
    tau = cyclic_twist(2, -1, -1)
    assert verify_twisting(tau).ok
    H = twisted_product(tau)
    assert H.dim == 4 and validate(H, check_primitive=False).ok
    xy = H.mul({H.index("x"): ONE}, {H.index("y"): ONE})
    assert H.mul(xy, xy) == {H.index("1"): mpq(-1)}
    assert radical(H).is_zero()


def test_sign_error_detected():
    tau = cyclic_twist(4, 2, 3)
    sp = tau.space
    bad = tau.perturbed(1, 2, sp.nf({sp.col[(2, 1)]: mpq(-1)}))
    rep = verify_twisting(bad)
    assert not rep.ok and rep.first() is not None
    with pytest.raises(TwistingError):
        twisted_product(bad)


def test_twprod_reconstruction():
    d = twprod_decomposition(random_family(3, 2, 1, seed=4))
    assert d.iso.ok
    assert d.product.dim == r_family(random_family(3, 2, 1, seed=4)).dim


def test_inclusions_are_homomorphic():
    K1 = kronecker(1)
    C = twisted_product(canonical_v(s_ring(K1), s_ring(kronecker(1))))
    ia, ib = inclusion_A(C), inclusion_B(C)
    assert len(ia) == K1.dim and len(ib) == K1.dim
    c = K1.index("c1")
    assert C.mul(ia[c], ia[c]) == {}


def test_zero_nabla_is_tensor_differential():
    K1 = kronecker(1)
    tau = canonical_v(s_ring(K1), s_ring(kronecker(1, [-1])))
    C = dg_twisted_product(tau, None)
    assert C.differential is None


def test_nabla_example_cohomology():
    H = cohomology_dims(k1_dg())
    assert {d: h for d, h in H.items() if h} == {0: 2}


def test_nabla_escaping_rejected():
    A = kronecker(1)
    B = kronecker(1, [-1], ["d1"])
    Ar, Br = s_ring(A), s_ring(B)
    sp = tensor_over_R(Ar, Br)
    tau = canonical_v(Ar, Br, sp)
    labels = sp.labels()
    # an idempotent is not in the augmentation ideal
    nabla = {B.index("d1"): {labels.index("e1"): ONE}}
    with pytest.raises((NablaError, TwistingError)):
        dg_twisted_product(tau, nabla)
