import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.families import green, kronecker, r_family, random_family
from finalg.quadform import (BQF, QuadFormError, brute_force_represents, cycle, discriminant, equivalent,
                             euler_quadform, euler_quadform_family, exceptional_object_verdict,
                             family_F, family_q_prime, is_reduced, principal_form, psd_normal_form,
                             reduce, represents_one, representation_of_one, right_neighbor)

unimodular = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)).filter(
    lambda t: t[0] != 0)


def sl2(p, q, r):
    """An SL(2,Z) matrix from a nonzero p and free q, r (whenever it exists)."""
    # [[p, q], [r, s]] with p s - q r = 1
    if (1 + q * r) % p:
        return None
    return [[p, q], [r, (1 + q * r) // p]]


def test_semidefinite_case():
    for m in (1, 2, 3):
        f = euler_quadform_family(2, m, 1)
        assert f.D == 0
        assert psd_normal_form(f)[0] == BQF(m + 1, 0, 0)


def test_family_form_and_discriminant():
    f = euler_quadform_family(3, 1, 1)
    assert f == BQF(3, 6, 2) and discriminant(f) == 12 == family_F(3, 1, 1) ** 2 - 4
    for n, m, k, seed in [(3, 2, 1, 3), (4, 2, 2, 6), (5, 3, 2, 9)]:
        A = r_family(random_family(n, m, k, seed))
        g = euler_quadform(A)
        assert g == euler_quadform_family(n, m, k)
        assert g.D == family_F(n, m, k) ** 2 - 4


def test_reduced():
    assert is_reduced(BQF(1, 2, -2)) and is_reduced(BQF(-2, 2, 1))
    assert not is_reduced(BQF(3, 6, 2))
    with pytest.raises(QuadFormError):
        is_reduced(BQF(1, 1, 1))


def test_principal_cycle():
    assert right_neighbor(BQF(1, 2, -2)) == BQF(-2, 2, 1)
    assert right_neighbor(BQF(-2, 2, 1)) == BQF(1, 2, -2)
    assert set(cycle(principal_form(12))) == {BQF(1, 2, -2), BQF(-2, 2, 1)}
    for F in range(4, 12):
        P = cycle(principal_form(F * F - 4))
        assert set(P) == {BQF(1, F - 2, 2 - F), BQF(2 - F, F - 2, 1)}


def test_other_class_d12():
    other = cycle(BQF(2, 2, -1))
    assert BQF(2, 2, -1) in other and not equivalent(BQF(2, 2, -1), BQF(1, 2, -2))


def test_q_prime():
    q = family_q_prime(3, 1, 1)
    assert is_reduced(q)
    assert q not in cycle(principal_form(q.D))
    assert equivalent(q, euler_quadform_family(3, 1, 1))


def test_represents_one():
    assert represents_one(principal_form(12))
    f = euler_quadform_family(3, 1, 1)
    assert not represents_one(f)
    assert brute_force_represents(f, 200) is None
    assert representation_of_one(f) is None
    w = representation_of_one(BQF(-2, 2, 1).substitute([[2, 1], [1, 1]]))
    assert w is not None


def test_square_discriminant_unsupported():
    with pytest.raises(QuadFormError):
        cycle(BQF(1, 3, 2))


def test_exceptional_verdicts():
    for n, m, k, seed in [(3, 2, 1, 3), (4, 2, 2, 6), (5, 3, 2, 9)]:
        v = exceptional_object_verdict(r_family(random_family(n, m, k, seed)))
        assert not v.possible
    assert exceptional_object_verdict(kronecker(2)).possible
    # the verdict agrees with a bounded search on every G_k
    for k in range(7):
        v = exceptional_object_verdict(green(k))
        assert v.possible == (brute_force_represents(v.form, 50) is not None)
    assert not exceptional_object_verdict(green(3)).possible  # 2(x + y)^2


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 40), unimodular)
def test_reduction_preserves_class(F, mat):
    S = sl2(*mat)
    if S is None or F < 3:
        return
    f = principal_form(F * F - 4).substitute(S)
    g, T = reduce(f)
    assert is_reduced(g) and g.D == f.D
    assert f.substitute(T) == g
    assert represents_one(f)
    x, y = representation_of_one(f)
    assert f(x, y) == 1
    assert len(cycle(g)) % 2 == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8), unimodular)
def test_equivalence_relation(a, b, c, mat):
    f = BQF(a, b, c)
    S = sl2(*mat)
    D = f.D
    if D <= 0 or D > 500 or int(D ** 0.5) ** 2 == D or S is None:
        return
    g = f.substitute(S)
    assert equivalent(f, f) and equivalent(f, g) and equivalent(g, f)
    h = g.substitute(S)
    assert equivalent(f, h)
