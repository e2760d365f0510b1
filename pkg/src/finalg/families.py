"""Named algebra families: Kronecker and Green algebras, generalized Green
products, the subspace-family algebras R_F with their Gamma quiver, and the
twisted-product decomposition of R_F."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .algebra import FinAlgebra, opposite, semisimple
from .exactmat import Echelon, RatMatrix, Vec, column_space, subspace_intersection, to_q
from .quiverpath import (Arrow, CycleDetected, LongestPath, NotNilpotentAtBound, Quiver,
                         RelationSet, longest_path, quotient_algebra, two_vertex_quiver)
from .twisted import (IsoReport, RRing, TwistingMap, canonical_v, check_generator_isomorphism,
                      inclusion_A, twisted_product)

__all__ = [
    "FamilyError", "kronecker", "kronecker_op", "kronecker_ij", "opposite", "green",
    "generalized_green", "green_factors", "efamily", "peirce_dimensions",
    "SubspaceFamily", "kk_family", "random_family", "r_family", "expected_peirce_dims",
    "GammaQuiver", "gamma_quiver", "CriterionVerdict", "gldim_by_criterion",
    "TwProdData", "twprod_decomposition", "random_split_algebra", "s_ring", "kronecker_ij_multi",
]


class FamilyError(ValueError):
    pass


def _auto_quotient(Q: Quiver, rels: list, start: int = 2) -> FinAlgebra:
    """Quotient by relations, raising the truncation bound until it suffices."""
    L = max(start, 2)
    while True:
        rs = RelationSet(Q, [], L)
        for r in rels:
            rs.add(r)
        try:
            return quotient_algebra(Q, rs)
        except NotNilpotentAtBound:
            L += 1
            if L > 64:
                raise


def s_ring(A: FinAlgebra, base: FinAlgebra | None = None) -> RRing:
    """A as an augmented ring over Q^N."""
    return RRing.over_semisimple(A, base)


# --------------------------------------------------------------------------
# Kronecker and Green algebras

def kronecker(n: int, degrees: Sequence[int] | None = None, names: Sequence[str] | None = None) -> FinAlgebra:
    """K_n: n arrows from vertex 1 to vertex 2 (graded by ``degrees``)."""
    if n < 0:
        raise FamilyError("arrow count must be non-negative")
    Q = two_vertex_quiver(n, 0, c_degrees=degrees, c_names=names)
    return quotient_algebra(Q, RelationSet(Q, [], 2))


def kronecker_op(n: int, degrees: Sequence[int] | None = None, names: Sequence[str] | None = None) -> FinAlgebra:
    """K_n^op presented as kQ_{0,n}: n arrows from vertex 2 to vertex 1."""
    if n < 0:
        raise FamilyError("arrow count must be non-negative")
    Q = two_vertex_quiver(0, n, b_degrees=degrees, b_names=names)
    return quotient_algebra(Q, RelationSet(Q, [], 2))


def kronecker_ij(N: int, i: int, j: int, d: int = 0, name: str | None = None) -> FinAlgebra:
    """K_ij[d] over Q^N: a single arrow from vertex i to vertex j (1-based) of degree d."""
    if not (1 <= i <= N and 1 <= j <= N) or i == j:
        raise FamilyError("need 1 <= i != j <= N")
    Q = Quiver(N, [Arrow(name or f"a{i}{j}", i - 1, j - 1, d)])
    return quotient_algebra(Q, RelationSet(Q, [], 2))


def green(k: int) -> FinAlgebra:
    """G_k on Q_{n,n} (k = 2n) or Q_{n,n-1} (k = 2n-1)."""
    if k < 0:
        raise FamilyError("k must be non-negative")
    n = (k + 1) // 2
    nb = n if k % 2 == 0 else n - 1
    Q = two_vertex_quiver(n, nb)
    rels = []
    for i in range(1, nb + 1):
        for j in range(1, n + 1):
            if j <= i:
                rels.append({f"c{j}*b{i}": 1})
            if i < j:
                rels.append({f"b{i}*c{j}": 1})
    A = _auto_quotient(Q, rels, 2)
    A.meta["name"] = f"G{k}"
    return A


def green_factors(ps: Sequence[int], qs: Sequence[int], p_degrees=None, q_degrees=None) -> list[FinAlgebra]:
    """Factors K_{p_n}^op, K_{q_n}, ..., K_{p_1}^op, K_{q_1} (lists given as p_1..p_n).

    Arrows of K_{q_i} are named c<i> (c<i>_<s> when q_i > 1), those of
    K_{p_i}^op b<i> likewise, so that <1,...,1> reproduces Green's labels.
    """
    if len(ps) != len(qs):
        raise FamilyError("need as many p as q")
    out = []
    for i in range(len(ps), 0, -1):
        p, q = ps[i - 1], qs[i - 1]
        bn = [f"b{i}"] if p == 1 else [f"b{i}_{s + 1}" for s in range(p)]
        cn = [f"c{i}"] if q == 1 else [f"c{i}_{s + 1}" for s in range(q)]
        pd = p_degrees[i - 1] if p_degrees else None
        qd = q_degrees[i - 1] if q_degrees else None
        out.append(kronecker_op(p, pd, bn))
        out.append(kronecker(q, qd, cn))
    return out


def generalized_green(factors: Sequence[FinAlgebra], check: bool = True, hexagon: bool = True) -> FinAlgebra:
    """Iterated product F_1 (x)^v F_2 (x)^v ... (x)^v F_r over Q^N, built from the right."""
    if not factors:
        raise FamilyError("need at least one factor")
    N = factors[0].N
    if any(F.N != N for F in factors):
        raise FamilyError("factors have different numbers of vertices")
    S = semisimple(N)
    acc = factors[-1]
    for F in reversed(factors[:-1]):
        if F.differential or acc.differential:
            raise FamilyError("factors must have zero differential")
        tau = canonical_v(s_ring(F, S), s_ring(acc, S))
        acc = twisted_product(tau, check=check, hexagon=hexagon)
    return acc


def efamily(p: int, q: int, delta: int, check: bool = True) -> FinAlgebra:
    """E_[p,q;delta] = K_p^op (x) K_1 (x) K_1^op[delta] (x) K_q."""
    fs = [kronecker_op(p, None, [f"b2_{s + 1}" for s in range(p)]),
          kronecker(1, None, ["c2"]),
          kronecker_op(1, [delta], ["b1"]),
          kronecker(q, None, [f"c1_{s + 1}" for s in range(q)])]
    return generalized_green(fs, check=check)


def peirce_dimensions(A: FinAlgebra) -> list[list[int]]:
    """dims[i][j] = dim e_i A e_j for a Peirce-basic algebra."""
    pe = A.peirce
    if pe is None:
        raise FamilyError("algebra basis is not Peirce-homogeneous")
    out = [[0] * A.N for _ in range(A.N)]
    for l, r in pe:
        out[l][r] += 1
    return out


# --------------------------------------------------------------------------
# subspace families

def _mat(cols, n) -> RatMatrix:
    return RatMatrix.from_columns([[to_q(x) for x in c] for c in cols], n)


@dataclass
class SubspaceFamily:
    """Subspaces V_i (dim k) and W_i (dim n-k) of C = Q^n, i = 1..m."""

    n: int
    m: int
    k: int
    V: list = field(default_factory=list)   # RatMatrix n x k each
    W: list = field(default_factory=list)   # RatMatrix n x (n-k) each
    name: str = ""

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise FamilyError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if len(self.V) != self.m or len(self.W) != self.m:
            raise FamilyError("need m subspaces V_i and m subspaces W_i")
        V, W = [], []
        for X, want, tag in [(self.V, self.k, "V"), (self.W, self.n - self.k, "W")]:
            for i, M in enumerate(X):
                if not isinstance(M, RatMatrix):
                    M = _mat(M, self.n)
                if M.nrows != self.n or M.rank() != want or M.ncols != want:
                    raise FamilyError(f"{tag}{i + 1} must be spanned by {want} independent vectors in Q^{self.n}")
                (V if tag == "V" else W).append(M)
        self.V, self.W = V, W

    @classmethod
    def from_vectors(cls, n, k, V, W, name=""):
        """V, W as lists (one per index) of lists of coordinate vectors."""
        return cls(n, len(V), k, [_mat(v, n) for v in V], [_mat(w, n) for w in W], name)

    def t(self, i: int, j: int) -> int:
        """dim(V_i cap W_j), 0-based indices."""
        return subspace_intersection(self.V[i], self.W[j]).ncols

    def t_matrix(self) -> list[list[int]]:
        return [[self.t(i, j) for j in range(self.m)] for i in range(self.m)]

    def is_generic(self) -> bool:
        return all(self.t(i, j) == 0 for i in range(self.m) for j in range(self.m))

    def T(self, c) -> list[int]:
        """Indices l (0-based) with c in W_l."""
        c = [to_q(x) for x in c]
        out = []
        for l, Wl in enumerate(self.W):
            if Wl.hstack(_mat([c], self.n)).rank() == Wl.ncols:
                out.append(l)
        return out

    def reorder(self, perm: Sequence[int]) -> "SubspaceFamily":
        """Family with V'_s = V_{perm[s]}, W'_s = W_{perm[s]}."""
        return SubspaceFamily(self.n, self.m, self.k, [self.V[p] for p in perm],
                              [self.W[p] for p in perm], self.name)

    def drop_last(self) -> "SubspaceFamily":
        return _PartialFamily(self.n, self.m - 1, self.k, self.V[:-1], self.W[:-1], self.name)

    def describe(self) -> dict:
        def cols(M):
            return [[str(x) for x in c] for c in M.columns()]
        return {"n": self.n, "m": self.m, "k": self.k,
                "V": [cols(M) for M in self.V], "W": [cols(M) for M in self.W]}


class _PartialFamily(SubspaceFamily):
    """Family allowed to be empty (m = 0), used for the algebra R_G."""

    def __post_init__(self):
        if self.m:
            super().__post_init__()


def kk_family(m: int) -> SubspaceFamily:
    """V_i = <a_i>, W_i = <a_n, ..., a_{i+1}, a_i - a_1, ..., a_2 - a_1>, k = 1,
    with n = max(m, 2) so that k < n also holds for m = 1."""
    if m < 1:
        raise FamilyError("m must be at least 1")
    n = max(m, 2)
    a = [[int(r == i) for r in range(n)] for i in range(n)]
    V, W = [], []
    for i in range(m):
        V.append([a[i]])
        gens = [a[s] for s in range(n - 1, i, -1)]
        gens += [[x - y for x, y in zip(a[s], a[0])] for s in range(i, 0, -1)]
        W.append(gens)
    return SubspaceFamily.from_vectors(n, 1, V, W, name=f"kk({m})")


def random_family(n: int, m: int, k: int, seed: int, generic: bool = True, entries: int = 3,
                  max_tries: int = 1000) -> SubspaceFamily:
    """Seeded random family; resampled until every V_i cap W_j = 0 when ``generic``."""
    if not 0 < k < n or m < 1:
        raise FamilyError("need 0 < k < n and m >= 1")
    rng = random.Random(seed)

    def sample(d):
        while True:
            M = RatMatrix([[rng.randint(-entries, entries) for _ in range(d)] for _ in range(n)], ncols=d)
            if M.rank() == d:
                return M

    for _ in range(max_tries):
        V = [sample(k) for _ in range(m)]
        W = [sample(n - k) for _ in range(m)]
        F = SubspaceFamily(n, m, k, V, W, name=f"random({n},{m},{k},seed={seed})")
        if not generic or F.is_generic():
            return F
    raise FamilyError("could not sample a generic family")


def _coeff_terms(vec, label_of) -> dict:
    return {label_of(c): x for c, x in enumerate(vec) if x}


def r_family(F: SubspaceFamily, arrow_names: bool = True) -> FinAlgebra:
    """R_F = kQ_{n,m} / I_F truncated at path length 4."""
    n, m = F.n, F.m
    Q = two_vertex_quiver(n, m)
    rs = RelationSet(Q, [], 4)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for l in range(1, m + 1):
                rs.add({f"b{i}*c{j}*b{l}": 1})
    for i in range(m):
        for w in F.W[i].columns():
            rs.add({f"c{c + 1}*b{i + 1}": x for c, x in enumerate(w) if x})
        for v in F.V[i].columns():
            rs.add({f"b{i + 1}*c{c + 1}": x for c, x in enumerate(v) if x})
    A = quotient_algebra(Q, rs)
    A.meta["name"] = F.name or "R_F"
    return A


def expected_peirce_dims(n: int, m: int, k: int) -> list[list[int]]:
    """dim e_i R_F e_j from the vector-space decomposition of R_F."""
    return [[1 + m * (n - k), m], [n + m * k * (n - k), 1 + m * k]]


# --------------------------------------------------------------------------
# the Gamma quiver

@dataclass
class GammaQuiver:
    quiver: Quiver
    t: list

    def vertex_label(self, v: int) -> str:
        m = len(self.t)
        return f"b{v + 1}" if v < m else f"v{v - m + 1}"


def gamma_quiver(F: SubspaceFamily) -> GammaQuiver:
    """Vertices b_1..b_m (0..m-1) and v_1..v_m (m..2m-1)."""
    m = F.m
    t = F.t_matrix()
    arrows = [Arrow(f"beta{i + 1}", i, m + i) for i in range(m)]
    for i in range(m):
        for j in range(m):
            for s in range(t[i][j]):
                arrows.append(Arrow(f"bb{i + 1}_{j + 1}_{s + 1}", i, j))
                arrows.append(Arrow(f"vb{i + 1}_{j + 1}_{s + 1}", m + i, j))
    return GammaQuiver(Quiver(2 * m, arrows, allow_loops=True), t)


@dataclass
class CriterionVerdict:
    finite: bool
    gldim: int | None
    longest: int | None
    witness: tuple

    def verdict(self) -> str:
        return f"gldim = {self.gldim}" if self.finite else "gldim = infinity"


def gldim_by_criterion(F: SubspaceFamily) -> CriterionVerdict:
    G = gamma_quiver(F)
    res = longest_path(G.quiver)
    if isinstance(res, CycleDetected):
        return CriterionVerdict(False, None, None, tuple(G.vertex_label(v) for v in res.witness))
    return CriterionVerdict(True, res.length + 2, res.length, tuple(G.vertex_label(v) for v in res.witness))


# --------------------------------------------------------------------------
# R_F as a twisted product over K(V_m)

@dataclass
class TwProdData:
    family: SubspaceFamily       # renumbered so that V_m meets no W_i
    order: list                  # original indices in the new numbering
    R_F: FinAlgebra
    K_V: FinAlgebra
    K_V1: FinAlgebra
    R_G: FinAlgebra
    product: FinAlgebra
    iso: IsoReport
    tau: TwistingMap | None = None


def _sink_order(F: SubspaceFamily) -> list[int]:
    t = F.t_matrix()
    sinks = [i for i in range(F.m) if not any(t[i])]
    if not sinks:
        raise FamilyError("no index i with V_i cap W_j = 0 for all j; the Gamma quiver has a cycle")
    last = sinks[-1]
    return [i for i in range(F.m) if i != last] + [last]


def twprod_decomposition(F: SubspaceFamily, check: bool = True, hexagon: bool = True) -> TwProdData:
    """Build (K(V_m) (x)^v_S K_1^op) (x)^v_{K(V_m)} R_G and compare with R_F
    through the generator map c_j -> 1 (x) c_j, b_i -> 1 (x) b_i (i < m),
    b_m -> b_m (x) 1."""
    order = _sink_order(F)
    F = F.reorder(order)
    n, m, k = F.n, F.m, F.k
    RF = r_family(F)
    S = semisimple(2)

    KV = kronecker(k, None, [f"x{s + 1}" for s in range(k)])
    K1op = kronecker_op(1, None, [f"b{m}"])
    KV1 = twisted_product(canonical_v(s_ring(KV, S), s_ring(K1op, S)), check=check)

    # K(V_m;1) as a K(V_m)-ring, augmented by killing b_m
    eps1 = inclusion_A(KV1)
    sp = KV1.meta["tensor"]
    pi1 = []
    for a, b in sp.basis:
        pi1.append({a: mpq(1)} if b in K1op.idempotents else {})
    ringA = RRing(KV1, KV, eps1, pi1, name="K(V;1)")

    G = F.drop_last()
    RG = r_family(G) if G.m else kronecker(n)
    # K(V_m) -> R_G via V_m inside C; R_G -> K(V_m) by killing W_m and B
    cidx = [RG.index(f"c{j + 1}") for j in range(n)]
    epsG = [{RG.idempotents[0]: mpq(1)}, {RG.idempotents[1]: mpq(1)}]
    Vm = F.V[m - 1]
    xlab = {KV.index(f"x{s + 1}"): s for s in range(k)}
    epsG_full = []
    for x in range(KV.dim):
        if x in KV.idempotents:
            epsG_full.append(epsG[KV.idempotents.index(x)])
        else:
            col = Vm.column(xlab[x])
            epsG_full.append({cidx[j]: to_q(col[j]) for j in range(n) if col[j]})
    # coordinates of each a_j in C = V_m + W_m, keeping the V_m part
    basisC = RatMatrix.from_columns(list(Vm.columns()) + list(F.W[m - 1].columns()), n)
    inv = basisC.inverse()
    piG = [{} for _ in range(RG.dim)]
    for r, e in enumerate(RG.idempotents):
        piG[e] = {KV.idempotents[r]: mpq(1)}
    for j in range(n):
        coords = inv.column(j)
        piG[cidx[j]] = {KV.index(f"x{s + 1}"): coords[s] for s in range(k) if coords[s]}
    ringB = RRing(RG, KV, epsG_full, piG, name="R_G")
    if check:
        bad = ringA.check() + ringB.check()
        if bad:
            raise FamilyError("structure maps fail: " + "; ".join(bad[:3]))
    tau = canonical_v(ringA, ringB)
    C = twisted_product(tau, check=check, hexagon=hexagon)
    sp = C.meta["tensor"]
    images = {}
    for j in range(n):
        images[f"c{j + 1}"] = sp.elem(KV1.unit, {cidx[j]: mpq(1)})
    for i in range(m - 1):
        images[f"b{i + 1}"] = sp.elem(KV1.unit, {RG.index(f"b{i + 1}"): mpq(1)})
    images[f"b{m}"] = sp.elem({KV1.index(f"b{m}"): mpq(1)}, RG.unit)
    iso = check_generator_isomorphism(RF, C, images)
    return TwProdData(F, order, RF, KV, KV1, RG, C, iso, tau)


# --------------------------------------------------------------------------
# random S-split algebras

def random_split_algebra(N: int, seed: int, arrows: int | None = None, degrees: Sequence[int] = (-1, 0, 1),
                         relation_prob: float = 0.4, rng: random.Random | None = None) -> FinAlgebra:
    """Quotient of a random acyclic quiver (arrows i -> j with i < j) by random
    length-2 monomial relations, graded by random arrow degrees."""
    rng = rng or random.Random(seed)
    if arrows is None:
        arrows = rng.randint(1, max(1, N + 1))
    arrs = []
    for s in range(arrows):
        i = rng.randrange(N - 1)
        j = rng.randrange(i + 1, N)
        arrs.append(Arrow(f"a{s + 1}", i, j, rng.choice(list(degrees))))
    Q = Quiver(N, arrs)
    rels = []
    for x in arrs:
        for y in arrs:
            if x.target == y.source and rng.random() < relation_prob:
                rels.append({f"{y.label}*{x.label}": 1})
    return _auto_quotient(Q, rels, max(2, N))


def kronecker_ij_multi(N: int, i: int, j: int, d: int = 0, count: int = 1, prefix: str | None = None) -> FinAlgebra:
    """Q^N with ``count`` parallel arrows from vertex i to vertex j of degree d."""
    if not (1 <= i <= N and 1 <= j <= N) or i == j:
        raise FamilyError("need 1 <= i != j <= N")
    base = prefix or f"a{i}{j}"
    names = [base] if count == 1 else [f"{base}_{s + 1}" for s in range(count)]
    Q = Quiver(N, [Arrow(nm, i - 1, j - 1, d) for nm in names])
    return quotient_algebra(Q, RelationSet(Q, [], 2))
