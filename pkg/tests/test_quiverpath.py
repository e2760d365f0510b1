import pytest
from gmpy2 import mpq

from finalg.algebra import radical, validate
from finalg.quiverpath import (Arrow, CycleDetected, LongestPath, NotNilpotentAtBound, Quiver, QuiverError,
                               RelationSet, arrow_ideal, enumerate_paths, longest_path, monomial_paths,
                               path_algebra, quotient_algebra, two_vertex_quiver)


def labels(Q, paths):
    return [Q.label(p) for p in paths]


def test_enumerate_paths():
    assert labels(Quiver(3, []), enumerate_paths(Quiver(3, []), 4)) == ["e1", "e2", "e3"]
    Q10 = two_vertex_quiver(1, 0)
    assert labels(Q10, enumerate_paths(Q10, 2)) == ["e1", "e2", "c1"]
    Q11 = two_vertex_quiver(1, 1)
    assert set(labels(Q11, enumerate_paths(Q11, 2))) == {"e1", "e2", "c1", "b1", "b1*c1", "c1*b1"}


def test_path_parsing_round_trip():
    Q = two_vertex_quiver(2, 1)
    p = Q.path("c2*b1*c1")
    assert p.length == 3 and Q.label(p) == "c2*b1*c1"
    with pytest.raises(QuiverError):
        Q.path("c1*c2")  # not composable
    with pytest.raises(QuiverError):
        Q.path("zz")


def test_kronecker_quotient():
    for n in range(4):
        Q = two_vertex_quiver(n, 0)
        A = quotient_algebra(Q, RelationSet(Q, [], 2))
        assert A.dim == n + 2 and validate(A).ok


def test_green_three():
    Q = two_vertex_quiver(2, 1)
    rels = RelationSet(Q, [{Q.path("c1*b1"): 1}, {Q.path("b1*c2"): 1}], 4)
    A = quotient_algebra(Q, rels)
    assert A.dim == 8
    assert set(A.labels) == {"e1", "e2", "c1", "c2", "b1", "b1*c1", "c2*b1", "c2*b1*c1"}
    assert validate(A).ok
    oracle = monomial_paths(Q, [Q.path("c1*b1"), Q.path("b1*c2")], 4)
    assert sorted(oracle) == sorted(A.meta["paths"])


def test_cycle_not_nilpotent():
    Q = two_vertex_quiver(1, 1)
    with pytest.raises((NotNilpotentAtBound, ValueError)):
        quotient_algebra(Q, RelationSet(Q, [], 4))


def test_non_monomial_relation():
    # a commutative square: b*a = d*c
    Q = Quiver(4, [Arrow("a", 0, 1), Arrow("b", 1, 3), Arrow("c", 0, 2), Arrow("d", 2, 3)])
    rels = RelationSet(Q, [{Q.path("b*a"): 1, Q.path("d*c"): -1}], 3)
    assert not rels.is_monomial()
    A = quotient_algebra(Q, rels)
    assert A.dim == 4 + 4 + 1
    assert validate(A).ok
    J = radical(A)
    arr = arrow_ideal(A)
    assert J.dim == arr.dim == 5


def test_relation_endpoints_must_agree():
    Q = two_vertex_quiver(2, 0)
    with pytest.raises(QuiverError):
        RelationSet(Q, [{Q.path("c1"): 1, Q.path("e1"): 1}], 2)


def test_path_algebra_graded():
    Q = Quiver(2, [Arrow("h", 0, 1, -1)])
    A = path_algebra(Q)
    assert A.degrees == (0, 0, -1)


def test_longest_path():
    r = longest_path(Quiver(3, []))
    assert isinstance(r, LongestPath) and r.length == 0
    r = longest_path(Quiver(2, [Arrow("a", 0, 1), Arrow("b", 1, 0)]))
    assert isinstance(r, CycleDetected)
    r = longest_path(Quiver(4, [Arrow("a", 0, 1), Arrow("b", 1, 2), Arrow("c", 2, 3), Arrow("x", 0, 3)]))
    assert r.length == 3 and r.witness == (0, 1, 2, 3)
