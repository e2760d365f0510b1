"""Shared sample objects for the test suite."""

from __future__ import annotations

import random

from gmpy2 import mpq

from finalg.algebra import FinAlgebra
from finalg.families import kronecker, random_family, s_ring
from finalg.quiverpath import Arrow, Quiver, path_algebra
from finalg.repmod import dg_endomorphism_algebra, filtration_summands
from finalg.twisted import canonical_v, dg_twisted_product, tensor_over_R

# (n, m, k, seed): ten seeded generic families over four shapes
SWEEP = [
    (2, 1, 1, 1), (2, 1, 1, 2),
    (3, 2, 1, 3), (3, 2, 1, 4), (3, 2, 1, 5),
    (4, 2, 2, 6), (4, 2, 2, 7), (4, 2, 2, 8),
    (5, 3, 2, 9), (5, 3, 2, 10),
]


def sweep_families():
    return [random_family(n, m, k, seed) for n, m, k, seed in SWEEP]


def k1_dg() -> FinAlgebra:
    """K_1 (x)^{nabla, v} K_1[-1] with nabla(c2) = c1; cohomology is that of Q^2."""
    return kronecker_dg(1)


def kronecker_dg(n: int) -> FinAlgebra:
    """K_n (x)^{nabla, v} K_n[-1] with nabla(d_s) = c_s."""
    A = kronecker(n, None, [f"c{s + 1}" for s in range(n)])
    B = kronecker(n, [-1] * n, [f"d{s + 1}" for s in range(n)])
    Ar, Br = s_ring(A), s_ring(B)
    sp = tensor_over_R(Ar, Br)
    tau = canonical_v(Ar, Br, sp)
    labels = sp.labels()
    nabla = {B.index(f"d{s + 1}"): {labels.index(f"c{s + 1}"): mpq(1)} for s in range(n)}
    return dg_twisted_product(tau, nabla)


def _with_differential(A: FinAlgebra, d: dict) -> FinAlgebra:
    """Path algebra with d given on arrows, extended to paths by the Leibniz rule."""
    Q = A.meta["quiver"]
    on_arrow = {}
    for lab, terms in d.items():
        on_arrow[Q.arrow_index(lab)] = {A.index(t): mpq(c) for t, c in terms.items()}
    diff = []
    for p in A.meta["paths"]:
        v: dict = {}
        # p = x_r ... x_1 as a product; d(x y) = d(x) y + (-1)^|x| x d(y)
        arrows = list(reversed(p.arrows))
        sign = 1
        for pos, a in enumerate(arrows):
            da = on_arrow.get(a)
            if da:
                left = {A.index(Q.label(Q.path_from_arrows(list(reversed(arrows[:pos]))))): mpq(1)} if pos else None
                right = {A.index(Q.label(Q.path_from_arrows(list(reversed(arrows[pos + 1:]))))): mpq(1)} \
                    if pos + 1 < len(arrows) else None
                term = da
                if left is not None:
                    term = A.mul(left, term)
                if right is not None:
                    term = A.mul(term, right)
                for k, c in term.items():
                    v[k] = v.get(k, 0) + sign * c
            sign *= -1 if Q.arrows[a].degree % 2 else 1
        diff.append({k: c for k, c in v.items() if c})
    return FinAlgebra(A.labels, A.table, A.idempotents, degrees=A.degrees, differential=diff,
                      meta=dict(A.meta))


def a3_homotopy() -> FinAlgebra:
    """1 -a-> 2 -b-> 3 with h: 1 -> 3 of degree -1 and d(h) = b*a."""
    Q = Quiver(3, [Arrow("a", 0, 1), Arrow("b", 1, 2), Arrow("h", 0, 2, -1)])
    return _with_differential(path_algebra(Q, 3), {"h": {"b*a": 1}})


def a4_homotopy() -> FinAlgebra:
    """Linear A_4 with homotopies h1 (d = b*a), h2 (d = c*b) and k (d = c*h1 - h2*a)."""
    Q = Quiver(4, [Arrow("a", 0, 1), Arrow("b", 1, 2), Arrow("c", 2, 3),
                   Arrow("h1", 0, 2, -1), Arrow("h2", 1, 3, -1), Arrow("k", 0, 3, -2)])
    return _with_differential(path_algebra(Q, 4), {
        "h1": {"b*a": 1}, "h2": {"c*b": 1}, "k": {"c*h1": 1, "h2*a": -1}})


def endomorphism_dg() -> FinAlgebra:
    """End of the filtration summands of the K_1 example: a DG algebra with nonzero d."""
    return dg_endomorphism_algebra(filtration_summands(k1_dg()))


def dg_samples() -> dict:
    return {"K1_nabla": k1_dg(), "K2_nabla": kronecker_dg(2), "A3_h": a3_homotopy(),
            "A4_h": a4_homotopy(), "End_K1": endomorphism_dg()}


def random_homogeneous(A: FinAlgebra, rng: random.Random, terms: int = 2) -> dict:
    """Random element of one degree and one Peirce block (when available)."""
    deg = rng.choice(A.degree_window())
    basis = A.basis_in_degree(deg)
    if A.peirce is not None:
        block = rng.choice(sorted({A.peirce[i] for i in basis}))
        basis = [i for i in basis if A.peirce[i] == block]
    pick = rng.sample(basis, min(terms, len(basis)))
    return {i: mpq(rng.choice([-2, -1, 1, 2, 3])) for i in pick}
