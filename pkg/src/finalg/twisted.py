"""Twisted tensor products of algebras and DG algebras over a base algebra R.

Both factors are R-rings (an algebra with a structure map from R, possibly
with an augmentation back to R).  The tensor product over R is realised as
A (x)_Q B modulo the balancing relations, with a canonical basis of surviving
pairs (a_i, b_j).  A twisting map is stored by its values on the pairs
b_j (x) a_i, written in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from gmpy2 import mpq

from .algebra import (FinAlgebra, ValidationReport, apply_linear, homomorphism_violations,
                      semisimple, validate)
from .exactmat import Echelon, Vec, to_q, vaxpy, vclean

__all__ = [
    "RRing", "TensorSpace", "TwistingMap", "TwistReport", "TwistingError", "NablaError",
    "tensor_over_R", "canonical_v", "verify_twisting", "twisted_product",
    "dg_twisted_product", "IsoReport", "check_generator_isomorphism",
    "inclusion_A", "inclusion_B", "projection_B", "root_algebra", "cyclic_twist",
]


class TwistingError(ValueError):
    def __init__(self, report: "TwistReport"):
        super().__init__(f"twisting map fails its axioms: {report.first()}")
        self.report = report


class NablaError(ValueError):
    pass


class RRing:
    """Algebra A with a structure map eps: R -> A and optional augmentation pi: A -> R."""

    def __init__(self, algebra: FinAlgebra, base: FinAlgebra, eps: Sequence[Vec],
                 pi: Sequence[Vec] | None = None, name: str | None = None):
        self.A = algebra
        self.R = base
        self.eps = [vclean(dict(v)) for v in eps]
        self.pi = [vclean(dict(v)) for v in pi] if pi is not None else None
        self.name = name
        if len(self.eps) != base.dim:
            raise ValueError("structure map needs one image per base basis element")
        if self.pi is not None and len(self.pi) != algebra.dim:
            raise ValueError("augmentation needs one image per algebra basis element")

    @classmethod
    def over_semisimple(cls, A: FinAlgebra, base: FinAlgebra | None = None,
                        name: str | None = None) -> "RRing":
        """A as an S-ring for S = Q^N, augmented by killing every non-idempotent
        basis element (valid for algebras in Peirce-basic form)."""
        N = A.N
        S = base if base is not None else semisimple(N)
        if S.dim != N:
            raise ValueError("semisimple base has the wrong number of idempotents")
        eps = [{A.idempotents[r]: mpq(1)} for r in range(N)]
        pos = {e: r for r, e in enumerate(A.idempotents)}
        pi = [{pos[i]: mpq(1)} if i in pos else {} for i in range(A.dim)]
        return cls(A, S, eps, pi, name)

    @property
    def augmented(self) -> bool:
        return self.pi is not None

    def eps_of(self, r: Vec) -> Vec:
        return apply_linear(self.eps, r)

    def pi_of(self, x: Vec) -> Vec:
        if self.pi is None:
            raise ValueError("R-ring has no augmentation")
        return apply_linear(self.pi, x)

    def check(self) -> list[str]:
        bad = ["structure map: " + s for s in homomorphism_violations(self.R, self.A, self.eps, chain=True)]
        if self.pi is not None:
            bad += ["augmentation: " + s for s in homomorphism_violations(self.A, self.R, self.pi, chain=True)]
            for r in range(self.R.dim):
                if self.pi_of(self.eps[r]) != {r: mpq(1)}:
                    bad.append(f"augmentation does not split the structure map at {self.R.labels[r]}")
        return bad

    def augmentation_ideal(self) -> list[Vec]:
        from .exactmat import kernel_of_images
        return kernel_of_images(self.pi) if self.pi is not None else []


def _same_base(R1: FinAlgebra, R2: FinAlgebra) -> bool:
    return R1 is R2 or (R1.dim == R2.dim and R1.table == R2.table and R1.unit == R2.unit)


class TensorSpace:
    """A (x)_R B with a basis of surviving pairs.

    Pair columns are ordered so that pairs involving idempotents come last and
    therefore survive as basis elements whenever they are nonzero.
    """

    def __init__(self, Ar: RRing, Br: RRing):
        if not _same_base(Ar.R, Br.R):
            raise ValueError("factors are rings over different bases")
        self.Ar, self.Br = Ar, Br
        A, B = Ar.A, Br.A
        self.A, self.B, self.R = A, B, Ar.R
        idA, idB = set(A.idempotents), set(B.idempotents)
        pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)]
        pairs.sort(key=lambda p: ((p[0] in idA) + (p[1] in idB), p))
        self.col = {p: c for c, p in enumerate(pairs)}
        ech = Echelon()
        for r in range(self.R.dim):
            ea, eb = Ar.eps[r], Br.eps[r]
            right = [A.mul({i: mpq(1)}, ea) for i in range(A.dim)]
            left = [B.mul(eb, {j: mpq(1)}) for j in range(B.dim)]
            for i in range(A.dim):
                for j in range(B.dim):
                    v = self.qvec(right[i], {j: mpq(1)})
                    vaxpy(v, -1, self.qvec({i: mpq(1)}, left[j]))
                    if v:
                        ech.add(v)
        self._ech = ech
        piv = set(ech.pivots)
        keep = [c for c in range(len(pairs)) if c not in piv]
        # present surviving pairs with idempotent pairs first
        keep.sort(key=lambda c: (-((pairs[c][0] in idA) + (pairs[c][1] in idB)), c))
        self.basis = [pairs[c] for c in keep]
        self._pos = {c: k for k, c in enumerate(keep)}
        self._single: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def qvec(self, x: Vec, y: Vec) -> Vec:
        """x (x) y in A (x)_Q B column coordinates."""
        out: Vec = {}
        col = self.col
        for i, a in x.items():
            for j, b in y.items():
                k = col[(i, j)]
                out[k] = out.get(k, 0) + a * b
        return vclean(out)

    def nf(self, qv: Vec) -> Vec:
        pos = self._pos
        return {pos[c]: v for c, v in self._ech.normal_form(qv).items()}

    def pair(self, i: int, j: int) -> Vec:
        key = (i, j)
        hit = self._single.get(key)
        if hit is None:
            hit = self.nf({self.col[key]: mpq(1)})
            self._single[key] = hit
        return hit

    def elem(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.pair(i, j)
                if p:
                    vaxpy(out, a * b, p)
        return out

    def labels(self) -> list[str]:
        A, B = self.A, self.B
        idA, idB = set(A.idempotents), set(B.idempotents)
        out, seen = [], set()
        for i, j in self.basis:
            if j in idB:
                lab = A.labels[i]
            elif i in idA:
                lab = B.labels[j]
            else:
                lab = f"{A.labels[i]}*{B.labels[j]}"
            while lab in seen:
                lab += "'"
            seen.add(lab)
            out.append(lab)
        return out


def tensor_over_R(Ar: RRing, Br: RRing) -> TensorSpace:
    return TensorSpace(Ar, Br)


class TwistingMap:
    """tau: B (x)_R A -> A (x)_R B given on basis pairs (b_j, a_i)."""

    def __init__(self, space: TensorSpace, values: dict, name: str = "tau"):
        self.space = space
        self.name = name
        self.values = {k: v for k, v in values.items() if v}

    @classmethod
    def from_function(cls, space: TensorSpace, fn: Callable[[int, int], dict], name: str = "tau") -> "TwistingMap":
        """``fn(j, i)`` returns tau(b_j (x) a_i) as ``{(a_index, b_index): coeff}``."""
        values = {}
        for j in range(space.B.dim):
            for i in range(space.A.dim):
                qv: Vec = {}
                for (a, b), c in fn(j, i).items():
                    vaxpy(qv, to_q(c), {space.col[(a, b)]: mpq(1)})
                values[(j, i)] = space.nf(qv)
        return cls(space, values, name)

    def at(self, j: int, i: int) -> Vec:
        return self.values.get((j, i), {})

    def apply(self, y: Vec, x: Vec) -> Vec:
        """tau(y (x) x) for y in B, x in A."""
        out: Vec = {}
        for j, b in y.items():
            for i, a in x.items():
                v = self.values.get((j, i))
                if v:
                    vaxpy(out, a * b, v)
        return out

    def perturbed(self, j: int, i: int, new: Vec, name: str | None = None) -> "TwistingMap":
        vals = dict(self.values)
        vals[(j, i)] = vclean(dict(new))
        return TwistingMap(self.space, vals, name or self.name + "'")


def canonical_v(Ar: RRing, Br: RRing, space: TensorSpace | None = None) -> TwistingMap:
    """v(b (x) a) = eA(pB(b)) a (x) 1 + 1 (x) b eB(pA(a)) - eA(pB(b)) (x) eB(pA(a))."""
    if not (Ar.augmented and Br.augmented):
        raise ValueError("the canonical twisting map needs augmentations on both factors")
    sp = space or TensorSpace(Ar, Br)
    A, B = sp.A, sp.B
    values = {}
    for j in range(B.dim):
        x = Ar.eps_of(Br.pi[j])
        xa_cache = {}
        for i in range(A.dim):
            y = Br.eps_of(Ar.pi[i])
            if not x and not y:
                continue
            qv: Vec = {}
            if x:
                xa = xa_cache.get(i)
                if xa is None:
                    xa = xa_cache[i] = A.mul(x, {i: mpq(1)})
                vaxpy(qv, 1, sp.qvec(xa, B.unit))
            if y:
                vaxpy(qv, 1, sp.qvec(A.unit, B.mul({j: mpq(1)}, y)))
            if x and y:
                vaxpy(qv, -1, sp.qvec(x, y))
            values[(j, i)] = sp.nf(qv)
    return TwistingMap(sp, values, "v")


# --------------------------------------------------------------------------
# verification

@dataclass
class TwistReport:
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counts

    def record(self, kind: str, witness: tuple):
        self.counts[kind] = self.counts.get(kind, 0) + 1
        if self.counts[kind] <= 10:
            self.violations.append((kind, witness))

    def first(self, kind: str | None = None):
        for k, w in self.violations:
            if kind is None or k == kind:
                return k, w
        return None


def _left_A(sp: TensorSpace, x: Vec, v: Vec) -> Vec:
    """x . v for x in A acting on a vector of A (x)_R B."""
    out: Vec = {}
    for k, c in v.items():
        a, b = sp.basis[k]
        vaxpy(out, c, sp.elem(sp.A.mul(x, {a: mpq(1)}), {b: mpq(1)}))
    return out


def _right_B(sp: TensorSpace, v: Vec, y: Vec) -> Vec:
    out: Vec = {}
    for k, c in v.items():
        a, b = sp.basis[k]
        vaxpy(out, c, sp.elem({a: mpq(1)}, sp.B.mul({b: mpq(1)}, y)))
    return out


def _tensor_d(sp: TensorSpace, v: Vec) -> Vec:
    """Standard differential d(a (x) b) = dA(a) (x) b + (-1)^|a| a (x) dB(b)."""
    A, B = sp.A, sp.B
    out: Vec = {}
    for k, c in v.items():
        a, b = sp.basis[k]
        da = A.d({a: mpq(1)})
        if da:
            vaxpy(out, c, sp.elem(da, {b: mpq(1)}))
        db = B.d({b: mpq(1)})
        if db:
            vaxpy(out, -c if A.degree(a) % 2 else c, sp.elem({a: mpq(1)}, db))
    return out


def verify_twisting(tau: TwistingMap, hexagon: bool = True) -> TwistReport:
    sp = tau.space
    A, B, R = sp.A, sp.B, sp.R
    Ar, Br = sp.Ar, sp.Br
    rep = TwistReport()
    ea = [{i: mpq(1)} for i in range(A.dim)]
    eb = [{j: mpq(1)} for j in range(B.dim)]

    for i in range(A.dim):
        if tau.apply(B.unit, ea[i]) != sp.elem(ea[i], B.unit):
            rep.record("fixsides", ("1", A.labels[i]))
    for j in range(B.dim):
        if tau.apply(eb[j], A.unit) != sp.elem(A.unit, eb[j]):
            rep.record("fixsides", (B.labels[j], "1"))
    rep.checked["fixsides"] = A.dim + B.dim

    for r in range(R.dim):
        er_a, er_b = Ar.eps[r], Br.eps[r]
        for j in range(B.dim):
            bj_r = B.mul(eb[j], er_b)
            r_bj = B.mul(er_b, eb[j])
            for i in range(A.dim):
                if tau.apply(bj_r, ea[i]) != tau.apply(eb[j], A.mul(er_a, ea[i])):
                    rep.record("balanced", (B.labels[j], R.labels[r], A.labels[i]))
                t = tau.at(j, i)
                if tau.apply(r_bj, ea[i]) != _left_A(sp, er_a, t):
                    rep.record("left-linear", (R.labels[r], B.labels[j], A.labels[i]))
                if tau.apply(eb[j], A.mul(ea[i], er_a)) != _right_B(sp, t, er_b):
                    rep.record("right-linear", (B.labels[j], A.labels[i], R.labels[r]))
    rep.checked["bilinear"] = R.dim * A.dim * B.dim

    if A.degrees is not None or B.degrees is not None:
        for (j, i), v in tau.values.items():
            want = A.degree(i) + B.degree(j)
            for k in v:
                a, b = sp.basis[k]
                if A.degree(a) + B.degree(b) != want:
                    rep.record("degree", (B.labels[j], A.labels[i]))
                    break

    if A.differential or B.differential:
        for j in range(B.dim):
            for i in range(A.dim):
                lhs = tau.apply(B.d(eb[j]), ea[i])
                rhs = tau.apply(eb[j], A.d(ea[i]))
                vaxpy(lhs, -1 if B.degree(j) % 2 else 1, rhs)
                if lhs != _tensor_d(sp, tau.at(j, i)):
                    rep.record("chain-map", (B.labels[j], A.labels[i]))

    if hexagon and rep.ok:
        _check_hexagon(tau, rep)
    return rep


def _check_hexagon(tau: TwistingMap, rep: TwistReport):
    sp = tau.space
    A, B = sp.A, sp.B
    At, Bt = A.table, B.table
    basis = sp.basis
    T = {}
    for j in range(B.dim):
        for i in range(A.dim):
            T[(j, i)] = [(basis[k], c) for k, c in tau.at(j, i).items()]
    count = 0
    for j in range(B.dim):
        for j2 in range(B.dim):
            bb = Bt[j][j2]
            for i in range(A.dim):
                X = T[(j2, i)]
                for i2 in range(A.dim):
                    count += 1
                    lhs = tau.apply(bb, At[i][i2]) if bb else {}
                    acc: Vec = {}
                    for (ak, bk), c in X:
                        Y2 = T[(bk, i2)]
                        if not Y2:
                            continue
                        for (ap, bp), c1 in T[(j, ak)]:
                            for (aq, bq), c2 in Y2:
                                for (as_, bs), c3 in T[(bp, aq)]:
                                    x = At[ap][as_]
                                    if not x:
                                        continue
                                    y = Bt[bs][bq]
                                    if not y:
                                        continue
                                    vaxpy(acc, c * c1 * c2 * c3, sp.qvec(x, y))
                    if sp.nf(acc) != lhs:
                        rep.record("hexagon", (B.labels[j], B.labels[j2], A.labels[i], A.labels[i2]))
    rep.checked["hexagon"] = count


# --------------------------------------------------------------------------
# products

def _product_table(tau: TwistingMap) -> list:
    sp = tau.space
    A, B = sp.A, sp.B
    At, Bt = A.table, B.table
    basis = sp.basis
    table = []
    for a, b in basis:
        row = []
        for a2, b2 in basis:
            acc: Vec = {}
            for k, c in tau.at(b, a2).items():
                ak, bk = basis[k]
                x = At[a][ak]
                if not x:
                    continue
                y = Bt[bk][b2]
                if y:
                    vaxpy(acc, c, sp.qvec(x, y))
            row.append(sp.nf(acc) if acc else {})
        table.append(row)
    return table


def twisted_product(tau: TwistingMap, check: bool = True, hexagon: bool = True,
                    labels: Sequence[str] | None = None) -> FinAlgebra:
    """The R-ring (A (x)_R B, mu_tau)."""
    sp = tau.space
    A, B = sp.A, sp.B
    if check:
        rep = verify_twisting(tau, hexagon=hexagon)
        if not rep.ok:
            raise TwistingError(rep)
    table = _product_table(tau)
    degrees = None
    if A.degrees is not None or B.degrees is not None:
        degrees = [A.degree(a) + B.degree(b) for a, b in sp.basis]
    diff = None
    if A.differential or B.differential:
        diff = [_tensor_d(sp, {k: mpq(1)}) for k in range(sp.dim)]
    C = _assemble(sp, table, degrees, diff, labels, {"tensor": sp, "tau": tau.name})
    if check:
        rep = validate(C, check_primitive=False)
        if not rep.ok:
            raise TwistingError(TwistReport([(v.kind, v.witness) for v in rep.violations], dict(rep.counts)))
    return C


def _assemble(sp: TensorSpace, table, degrees, diff, labels, meta) -> FinAlgebra:
    unit = sp.elem(sp.A.unit, sp.B.unit)
    idem = []
    for r in sp.R.idempotents:
        idem.append(sp.elem(sp.Ar.eps[r], sp.B.unit))
    idem = [v for v in idem if v]
    labs = list(labels) if labels is not None else sp.labels()
    simple = all(len(v) == 1 and next(iter(v.values())) == 1 for v in idem)
    if simple:
        return FinAlgebra(labs, table, [next(iter(v)) for v in idem], unit=unit,
                          degrees=degrees, differential=diff, meta=meta)
    tmp = FinAlgebra(labs, table, [], unit=unit, degrees=degrees, differential=diff,
                     meta=dict(meta, rebased=True))
    return tmp.with_idempotent_basis(idem)


def _space(C: FinAlgebra) -> TensorSpace:
    if "tensor" not in C.meta or C.meta.get("rebased"):
        raise ValueError("algebra is not written in a tensor-pair basis")
    return C.meta["tensor"]


def inclusion_A(C: FinAlgebra) -> list[Vec]:
    sp = _space(C)
    return [sp.elem({i: mpq(1)}, sp.B.unit) for i in range(sp.A.dim)]


def inclusion_B(C: FinAlgebra) -> list[Vec]:
    sp = _space(C)
    return [sp.elem(sp.A.unit, {j: mpq(1)}) for j in range(sp.B.dim)]


def projection_B(C: FinAlgebra) -> list[Vec]:
    """p_B(a (x) b) = eB(pA(a)) b on the basis of C."""
    sp = _space(C)
    out = []
    for a, b in sp.basis:
        out.append(sp.B.mul(sp.Br.eps_of(sp.Ar.pi[a]), {b: mpq(1)}))
    return out


def dg_twisted_product(tau: TwistingMap, nabla: dict | None = None, check: bool = True,
                       hexagon: bool = True, labels: Sequence[str] | None = None) -> FinAlgebra:
    """C^nabla with d(a (x) b) = dA(a) (x) b + (-1)^|a| (a (x) dB(b) + a . nabla(1 (x) b)).

    ``nabla`` maps basis indices of B to vectors in the basis of the product.
    """
    sp = tau.space
    A, B = sp.A, sp.B
    if not sp.Ar.augmented:
        raise NablaError("the first factor needs an augmentation")
    C0 = twisted_product(tau, check=check, hexagon=hexagon, labels=labels)
    nab = {int(j): vclean(dict(v)) for j, v in (nabla or {}).items()}
    if C0.meta.get("rebased"):
        raise NablaError("nabla deformation needs idempotents that are basis pairs")
    pB = projection_B(C0)
    for j, v in nab.items():
        if j in B.idempotents and v:
            raise NablaError(f"nabla must vanish on the idempotent {B.labels[j]}")
        if apply_linear(pB, v):
            raise NablaError(f"nabla({B.labels[j]}) is not in the augmentation ideal tensor B")
        want = B.degree(j) + 1
        if any(C0.degree(k) != want for k in v):
            raise NablaError(f"nabla({B.labels[j]}) does not have degree {want}")
    diff = []
    for k, (a, b) in enumerate(sp.basis):
        v = _tensor_d(sp, {k: mpq(1)})
        nb = nab.get(b)
        if nb:
            ia = sp.elem({a: mpq(1)}, B.unit)
            vaxpy(v, -1 if A.degree(a) % 2 else 1, C0.mul(ia, nb))
        diff.append(v)
    meta = dict(C0.meta)
    meta["nabla"] = {B.labels[j]: C0.format_vector(v) for j, v in sorted(nab.items())}
    C = FinAlgebra(C0.labels, C0.table, C0.idempotents, unit=C0.unit, degrees=C0.degrees,
                   differential=diff, meta=meta)
    if check:
        rep = validate(C, check_primitive=False)
        if not rep.ok:
            first = rep.first()
            raise NablaError(f"deformed differential fails: {first}")
        bad = homomorphism_violations(A, C, inclusion_A(C), chain=True)
        bad += homomorphism_violations(C, B, pB, chain=True)
        if bad:
            raise NablaError("structure maps are not DG homomorphisms: " + "; ".join(bad))
    return C


# --------------------------------------------------------------------------
# cyclic algebras as twisted products over Q

def root_algebra(n: int, a, name: str = "x") -> FinAlgebra:
    """Q[x]/(x^n - a) in the basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    a = to_q(a)
    table = [[{i + j: mpq(1)} if i + j < n else {i + j - n: a} for j in range(n)] for i in range(n)]
    labels = ["1"] + [name if i == 1 else f"{name}^{i}" for i in range(1, n)]
    return FinAlgebra(labels, table, [0])


def cyclic_twist(n: int, a, b, zeta: int = -1) -> TwistingMap:
    """tau(y^k (x) x^l) = zeta^(kl) x^l (x) y^k on Q[x]/(x^n-a) and Q[y]/(y^n-b);
    over Q the root of unity zeta must be 1 or -1 (with n even)."""
    if zeta not in (1, -1) or zeta ** n != 1:
        raise ValueError("zeta must be a rational n-th root of unity")
    S = semisimple(1)
    Ar = RRing(root_algebra(n, a, "x"), S, [{0: mpq(1)}])
    Br = RRing(root_algebra(n, b, "y"), S, [{0: mpq(1)}])
    sp = tensor_over_R(Ar, Br)
    return TwistingMap.from_function(sp, lambda k, l: {(l, k): zeta ** (k * l)}, name=f"cyclic(zeta={zeta})")


# --------------------------------------------------------------------------
# isomorphism with a presented algebra

@dataclass
class IsoReport:
    ok: bool
    reason: str = ""
    images: list = field(default_factory=list)


def check_generator_isomorphism(P: FinAlgebra, C: FinAlgebra, arrow_images: dict,
                                vertex_images: Sequence[Vec] | None = None) -> IsoReport:
    """Extend arrows -> elements of C multiplicatively along the path basis of P
    and verify that the result is a bijective algebra homomorphism."""
    Q = P.meta.get("quiver")
    paths = P.meta.get("paths")
    if Q is None or paths is None:
        return IsoReport(False, "source algebra is not path-presented")
    if vertex_images is None:
        if C.N != Q.N:
            return IsoReport(False, "vertex counts differ")
        vertex_images = [{e: mpq(1)} for e in C.idempotents]
    gen = {}
    for a in Q.arrows:
        if a.label not in arrow_images:
            return IsoReport(False, f"no image for arrow {a.label}")
        gen[a.label] = vclean(dict(arrow_images[a.label]))
    images = []
    for p in paths:
        if not p.arrows:
            images.append(vertex_images[p.start])
            continue
        acc = gen[Q.arrows[p.arrows[0]].label]
        for i in p.arrows[1:]:
            acc = C.mul(gen[Q.arrows[i].label], acc)
        images.append(acc)
    if P.dim != C.dim:
        return IsoReport(False, f"dimensions differ ({P.dim} vs {C.dim})", images)
    ech = Echelon()
    for v in images:
        if ech.add(v) is None:
            return IsoReport(False, "generator map is not injective", images)
    bad = homomorphism_violations(P, C, images)
    if bad:
        return IsoReport(False, bad[0], images)
    return IsoReport(True, "", images)
