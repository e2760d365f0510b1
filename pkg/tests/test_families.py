import pytest
from gmpy2 import mpq

from finalg.algebra import opposite, semisimple, validate
from finalg.families import (FamilyError, SubspaceFamily, efamily, expected_peirce_dims, gamma_quiver,
                             generalized_green, gldim_by_criterion, green, green_factors, kk_family,
                             kronecker, kronecker_ij, kronecker_op, peirce_dimensions, r_family,
                             random_family, random_split_algebra)
from finalg.ktheory import chi_matrix
from finalg.quiverpath import CycleDetected, longest_path
from finalg.repmod import global_dimension, minimal_resolution, simple

ONE = mpq(1)


def degenerate():
    # V_1 = W_1 forces t_11 = k and a loop at b_1
    return SubspaceFamily.from_vectors(2, 1, [[[1, 0]]], [[[1, 0]]])


def test_kronecker_basics():
    K0 = kronecker(0)
    assert K0.dim == 2 and K0.table == semisimple(2).table
    assert kronecker(2).dim == 4
    K1op = opposite(kronecker(1))
    assert chi_matrix(K1op) == chi_matrix(kronecker_op(1))
    assert kronecker_op(1).meta["quiver"].arrows[0].source == 1


def test_green_basics():
    assert green(1).dim == kronecker(1).dim
    assert green(0).dim == 2
    assert green(3).dim == 8
    assert global_dimension(green(4)).value == 4


def test_generalized_green():
    for n in (1, 2):
        G = generalized_green(green_factors([1] * n, [1] * n))
        assert G.dim == green(2 * n).dim and chi_matrix(G) == chi_matrix(green(2 * n))
        G = generalized_green(green_factors([1] * (n - 1) + [0], [1] * n))
        assert G.dim == green(2 * n - 1).dim
    with pytest.raises(FamilyError):
        generalized_green([kronecker(1), semisimple(3)])
    with pytest.raises(FamilyError):
        green_factors([1], [1, 1])


def test_efamily():
    E = efamily(2, 1, 1)
    assert validate(E, check_primitive=False).ok
    assert E.degrees is not None and 1 in E.degrees


def test_kronecker_ij():
    K = kronecker_ij(3, 1, 3, 1)
    assert K.N == 3 and K.dim == 4
    assert chi_matrix(K).tolist() == [[1, 0, -1], [0, 1, 0], [0, 0, 1]]
    assert chi_matrix(kronecker_ij(2, 1, 2)).tolist() == [[1, 1], [0, 1]]
    with pytest.raises(FamilyError):
        kronecker_ij(3, 0, 2)


def test_r_family_dims():
    R = r_family(random_family(2, 1, 1, seed=1))
    assert R.dim == 8
    for n, m, k, seed in [(3, 2, 1, 3), (4, 2, 2, 6)]:
        R = r_family(random_family(n, m, k, seed))
        assert peirce_dimensions(R) == expected_peirce_dims(n, m, k)
        assert peirce_dimensions(R)[1][1] == 1 + m * k
        assert validate(R).ok


def test_family_invariants():
    with pytest.raises(FamilyError):
        SubspaceFamily.from_vectors(2, 2, [[[1, 0], [0, 1]]], [[]])
    with pytest.raises(FamilyError):
        SubspaceFamily.from_vectors(3, 1, [[[1, 0, 0]]], [[[0, 1, 0], [0, 2, 0]]])
    with pytest.raises(FamilyError):
        kk_family(0)


def test_random_family_seeded():
    a, b = random_family(4, 2, 2, seed=6), random_family(4, 2, 2, seed=6)
    assert [M.tolist() for M in a.V] == [M.tolist() for M in b.V]
    assert a.is_generic()


def test_gamma_generic():
    G = gamma_quiver(random_family(3, 2, 1, seed=5))
    res = longest_path(G.quiver)
    assert res.length == 1
    assert all(a.label.startswith("beta") for a in G.quiver.arrows)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_kk_criterion(m):
    v = gldim_by_criterion(kk_family(m))
    assert v.finite and v.longest == 2 * m - 1 and v.gldim == 2 * m + 1


def test_kk_two_gldim():
    assert global_dimension(r_family(kk_family(2))).value == 5


def test_cyclic_gamma():
    F = degenerate()
    assert F.t(0, 0) == 1
    assert isinstance(longest_path(gamma_quiver(F).quiver), CycleDetected)
    v = gldim_by_criterion(F)
    assert not v.finite and v.verdict() == "gldim = infinity"
    R = r_family(F)
    for bound in (4, 8, 12):
        assert minimal_resolution(simple(R, 1), bound).exceeded


def test_random_split_algebra():
    for seed in range(5):
        A = random_split_algebra(3, seed=seed)
        assert validate(A).ok and A.N == 3
