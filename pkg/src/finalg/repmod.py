"""Right modules over basic split algebras: projective covers, minimal
resolutions, global dimension, Hom complexes and DG endomorphism algebras.

Module elements are sparse coordinate vectors.  The algebra must be in
Peirce-basic form (declared idempotents are basis elements, every other basis
element is Peirce-homogeneous and radical); ``to_peirce_basic`` converts an
algebra whose basis merely spans the right pieces.
"""

from __future__ import annotations

import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .algebra import FinAlgebra, GradedIdeal, radical, validate, complex_cohomology
from .exactmat import Echelon, Vec, kernel_of_images, vaxpy, vclean

__all__ = [
    "ModuleError", "RightModule", "TableModule", "FreeModule", "SubModule", "QuotientModule",
    "basic_data", "to_peirce_basic", "simple", "projective", "regular_module", "submodule",
    "quotient_module", "direct_sum", "top_multiplicities", "Cover", "projective_cover",
    "Resolution", "minimal_resolution", "GlobalDimension", "global_dimension",
    "hom_space", "hom_complex", "dg_endomorphism_algebra", "filtration_summands",
]


class ModuleError(ValueError):
    pass


# --------------------------------------------------------------------------
# basic algebra data

@dataclass
class BasicData:
    left: tuple
    right: tuple
    idempotent_pos: dict        # basis index of e_j -> j
    radical: tuple              # basis indices spanning J
    generators: tuple           # basis indices lifting a basis of J/J^2
    proj_basis: tuple           # proj_basis[j] = basis indices x with e_j x = x


_BASIC: "weakref.WeakKeyDictionary[FinAlgebra, BasicData]" = weakref.WeakKeyDictionary()


def basic_data(A: FinAlgebra) -> BasicData:
    hit = _BASIC.get(A)
    if hit is not None:
        return hit
    if not A.is_peirce_basic():
        raise ModuleError("algebra is not in Peirce-basic form; use to_peirce_basic first")
    pe = A.peirce
    idem = {e: j for j, e in enumerate(A.idempotents)}
    rad = tuple(i for i in range(A.dim) if i not in idem)
    sq = Echelon()
    for x in rad:
        for y in rad:
            v = A.table[x][y]
            if v:
                sq.add(v)
    gens = tuple(x for x in rad if not sq.contains({x: mpq(1)}))
    # J = span(G) + J^2 only if the generators complete a basis of J/J^2
    test = Echelon()
    test.add_many(sq.basis())
    for x in rad:
        if not test.contains({x: mpq(1)}):
            test.add({x: mpq(1)})
    proj = tuple(tuple(x for x in range(A.dim) if pe[x][0] == j) for j in range(A.N))
    data = BasicData(tuple(p[0] for p in pe), tuple(p[1] for p in pe), idem, rad, gens, proj)
    _BASIC[A] = data
    return data


def to_peirce_basic(A: FinAlgebra) -> FinAlgebra:
    """Rewrite A in a basis of idempotents plus Peirce-homogeneous radical elements."""
    if A.is_peirce_basic():
        return A
    J = radical(A)
    E = [{e: mpq(1)} for e in A.idempotents]
    vectors, labels = list(E), [A.labels[e] for e in A.idempotents]
    for a, ea in enumerate(E):
        for b, eb in enumerate(E):
            ech = Echelon()
            for v in J.basis:
                w = A.mul(A.mul(ea, v), eb)
                if w and ech.add(w) is not None:
                    pass
            for k, w in enumerate(ech.basis()):
                vectors.append(w)
                labels.append(f"j{a + 1}{b + 1}_{k + 1}")
    if len(vectors) != A.dim:
        raise ModuleError("algebra is not basic split over its declared idempotents")
    B = A.change_basis(vectors, labels, list(range(A.N)))
    if not B.is_peirce_basic():
        raise ModuleError("algebra is not basic split over its declared idempotents")
    return B


# --------------------------------------------------------------------------
# modules

class RightModule:
    """Finite-dimensional right module; subclasses provide ``_act_basis``."""

    A: FinAlgebra
    dim: int
    degrees: tuple | None = None
    differential: tuple | None = None
    labels: tuple | None = None

    def __init__(self):
        self._cache: dict = {}

    def act_basis(self, k: int, x: int) -> Vec:
        key = (k, x)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._act_basis(k, x)
            self._cache[key] = hit
        return hit

    def _act_basis(self, k: int, x: int) -> Vec:
        raise NotImplementedError

    def act(self, v: Vec, x) -> Vec:
        """v . x for x a basis index or an algebra vector."""
        if isinstance(x, int):
            out: Vec = {}
            for k, c in v.items():
                w = self.act_basis(k, x)
                if w:
                    vaxpy(out, c, w)
            return out
        out = {}
        for i, a in x.items():
            vaxpy(out, a, self.act(v, i))
        return out

    def degree(self, k: int) -> int:
        return self.degrees[k] if self.degrees is not None else 0

    def d(self, v: Vec) -> Vec:
        if not self.differential:
            return {}
        out: Vec = {}
        for k, c in v.items():
            vaxpy(out, c, self.differential[k])
        return out

    def action_matrix(self, x: int) -> list[Vec]:
        return [self.act_basis(k, x) for k in range(self.dim)]

    def check(self) -> list[str]:
        """Right-module axioms on all basis pairs (and Leibniz when DG)."""
        A = self.A
        bad = []
        for k in range(self.dim):
            e = {k: mpq(1)}
            if self.act(e, A.unit) != e:
                bad.append(f"unit does not act as identity on m{k}")
            for x in range(A.dim):
                mx = self.act_basis(k, x)
                for y in range(A.dim):
                    if self.act(mx, y) != self.act(e, A.table[x][y]):
                        bad.append(f"(m{k}*{A.labels[x]})*{A.labels[y]} != m{k}*({A.labels[x]}*{A.labels[y]})")
                        if len(bad) > 10:
                            return bad
        if self.differential:
            for k in range(self.dim):
                if self.d(self.differential[k]):
                    bad.append(f"d^2(m{k}) != 0")
                for x in range(A.dim):
                    lhs = self.d(self.act_basis(k, x))
                    rhs = self.act(self.differential[k], x)
                    sign = -1 if self.degree(k) % 2 else 1
                    vaxpy(rhs, sign, self.act({k: mpq(1)}, A.d({x: mpq(1)})))
                    if lhs != rhs:
                        bad.append(f"Leibniz fails at m{k}*{A.labels[x]}")
        return bad


class TableModule(RightModule):
    def __init__(self, A: FinAlgebra, dim: int, action: dict, degrees=None, differential=None, labels=None):
        """``action[x][k]`` is m_k . b_x; missing entries act as zero."""
        super().__init__()
        self.A, self.dim = A, dim
        self._action = {x: [vclean(dict(c)) for c in cols] for x, cols in action.items()}
        self.degrees = tuple(degrees) if degrees is not None else None
        self.differential = tuple(vclean(dict(v)) for v in differential) if differential else None
        self.labels = tuple(labels) if labels is not None else None

    def _act_basis(self, k: int, x: int) -> Vec:
        cols = self._action.get(x)
        return cols[k] if cols is not None else {}


class FreeModule(RightModule):
    """Direct sum of e_j A over a list of vertices."""

    def __init__(self, A: FinAlgebra, vertices: Sequence[int]):
        super().__init__()
        self.A = A
        self.vertices = tuple(vertices)
        data = basic_data(A)
        self._data = data
        self.blocks = []
        self._where = []
        offset = 0
        for s, j in enumerate(self.vertices):
            pb = data.proj_basis[j]
            self.blocks.append((offset, pb, {x: p for p, x in enumerate(pb)}))
            for x in pb:
                self._where.append((s, x))
            offset += len(pb)
        self.dim = offset
        self.degrees = tuple(A.degree(x) for _, x in self._where) if A.degrees is not None else None
        if A.differential:
            diff = []
            for s, x in self._where:
                off, _, pos = self.blocks[s]
                diff.append({off + pos[k]: c for k, c in A.differential[x].items()})
            self.differential = tuple(diff)
        self.labels = tuple(f"{A.labels[x]}[{s + 1}]" for s, x in self._where)

    def _act_basis(self, k: int, y: int) -> Vec:
        s, x = self._where[k]
        off, _, pos = self.blocks[s]
        return {off + pos[i]: c for i, c in self.A.table[x][y].items()}

    def generator(self, s: int) -> int:
        """Coordinate of the idempotent generating block s."""
        off, _, pos = self.blocks[s]
        return off + pos[self.A.idempotents[self.vertices[s]]]

    def generator_coordinates(self) -> set:
        return {self.generator(s) for s in range(len(self.vertices))}

    def multiplicities(self) -> tuple:
        out = [0] * self.A.N
        for j in self.vertices:
            out[j] += 1
        return tuple(out)


class SubModule(RightModule):
    """Submodule spanned by vectors of an ambient module (must be closed)."""

    def __init__(self, ambient: RightModule, vectors: Sequence[Vec], close: bool = True):
        super().__init__()
        self.A = ambient.A
        self.ambient = ambient
        vecs = [vclean(dict(v)) for v in vectors]
        if close:
            vecs = _closure(ambient, vecs)
        ech = Echelon(track=True)
        basis = []
        for v in _homogeneous_order(ambient, vecs):
            if ech.add(v) is not None:
                basis.append(v)
        self.basis = basis
        self._ech = ech
        self.dim = len(basis)
        if ambient.degrees is not None:
            self.degrees = tuple(_vec_degree(ambient, v) for v in basis)
        if ambient.differential:
            self.differential = tuple(self.coordinates(ambient.d(v)) for v in basis)

    def coordinates(self, v: Vec) -> Vec:
        c = self._ech.coordinates(v)
        if c is None:
            raise ModuleError("vector is not in the submodule")
        return c

    def _act_basis(self, k: int, x: int) -> Vec:
        return self.coordinates(self.ambient.act(self.basis[k], x))


class QuotientModule(RightModule):
    def __init__(self, ambient: RightModule, sub_vectors: Sequence[Vec]):
        super().__init__()
        self.A = ambient.A
        self.ambient = ambient
        sub = _closure(ambient, [vclean(dict(v)) for v in sub_vectors])
        ech = Echelon()
        for v in _homogeneous_order(ambient, sub):
            ech.add(v)
        self._ech = ech
        piv = set(ech.pivots)
        self.keep = [k for k in range(ambient.dim) if k not in piv]
        self._pos = {k: p for p, k in enumerate(self.keep)}
        self.dim = len(self.keep)
        if ambient.degrees is not None:
            self.degrees = tuple(ambient.degree(k) for k in self.keep)
        if ambient.differential:
            self.differential = tuple(self.project(ambient.differential[k]) for k in self.keep)
        if ambient.labels is not None:
            self.labels = tuple(ambient.labels[k] for k in self.keep)

    def project(self, v: Vec) -> Vec:
        return {self._pos[k]: c for k, c in self._ech.normal_form(v).items()}

    def _act_basis(self, k: int, x: int) -> Vec:
        return self.project(self.ambient.act_basis(self.keep[k], x))


def _vec_degree(M: RightModule, v: Vec) -> int:
    degs = {M.degree(k) for k in v}
    if len(degs) != 1:
        raise ModuleError("submodule is not spanned by homogeneous vectors")
    return degs.pop()


def _homogeneous_order(M: RightModule, vecs: list[Vec]) -> list[Vec]:
    if M.degrees is None:
        return vecs
    out = []
    for v in vecs:
        parts: dict[int, Vec] = {}
        for k, c in v.items():
            parts.setdefault(M.degree(k), {})[k] = c
        out.extend(parts[d] for d in sorted(parts))
    return out


def _closure(M: RightModule, vecs: list[Vec]) -> list[Vec]:
    """Span of v . b over generators v and algebra basis elements b."""
    ech = Echelon()
    out = []
    for v in vecs:
        for x in range(M.A.dim):
            w = M.act(v, x)
            if w and ech.add(w) is not None:
                out.append(w)
    return out


def regular_module(A: FinAlgebra) -> TableModule:
    action = {x: [A.table[k][x] for k in range(A.dim)] for x in range(A.dim)}
    return TableModule(A, A.dim, action, degrees=A.degrees, differential=A.differential, labels=A.labels)


def simple(A: FinAlgebra, i: int) -> TableModule:
    basic_data(A)  # simple modules are indexed by the Peirce vertices
    e = A.idempotents[i]
    return TableModule(A, 1, {e: [{0: mpq(1)}]}, degrees=[0], labels=[f"S{i + 1}"])


def projective(A: FinAlgebra, i: int) -> FreeModule:
    return FreeModule(A, [i])


def submodule(M: RightModule, vectors: Sequence[Vec]) -> SubModule:
    return SubModule(M, vectors)


def quotient_module(M: RightModule, vectors: Sequence[Vec]) -> QuotientModule:
    return QuotientModule(M, vectors)


def direct_sum(mods: Sequence[RightModule]) -> TableModule:
    A = mods[0].A
    if any(M.A is not A for M in mods):
        raise ModuleError("modules over different algebras")
    offs, total = [], 0
    for M in mods:
        offs.append(total)
        total += M.dim
    action = {}
    for x in range(A.dim):
        cols = []
        for M, off in zip(mods, offs):
            for k in range(M.dim):
                cols.append({off + i: c for i, c in M.act_basis(k, x).items()})
        action[x] = cols
    graded = any(M.degrees is not None for M in mods)
    degrees = [M.degree(k) for M in mods for k in range(M.dim)] if graded else None
    diff = None
    if any(M.differential for M in mods):
        diff = [{off + i: c for i, c in M.d({k: mpq(1)}).items()} for M, off in zip(mods, offs) for k in range(M.dim)]
    return TableModule(A, total, action, degrees=degrees, differential=diff)


# --------------------------------------------------------------------------
# tops and covers

def _top(M: RightModule, U: Sequence[Vec]) -> list[list[Vec]]:
    """Per vertex, vectors of the span of U lifting a basis of (U/UJ)e_j."""
    A = M.A
    data = basic_data(A)
    by_right: dict[int, list[int]] = {}
    for g in data.generators:
        by_right.setdefault(data.right[g], []).append(g)
    tops = []
    for j, e in enumerate(A.idempotents):
        ech = Echelon()
        for u in U:
            for g in by_right.get(j, ()):
                w = M.act(u, g)
                if w:
                    ech.add(w)
        found = []
        for u in U:
            w = M.act(u, e)
            if w and ech.add(w) is not None:
                found.append(w)
        tops.append(found)
    return tops


def top_multiplicities(M: RightModule, U: Sequence[Vec] | None = None) -> tuple:
    if U is None:
        U = [{k: mpq(1)} for k in range(M.dim)]
    return tuple(len(t) for t in _top(M, U))


@dataclass
class Cover:
    P: FreeModule
    images: list          # images of the basis of P in the covered module
    kernel: list          # kernel basis in coordinates of P
    multiplicities: tuple
    exact: bool
    minimal: bool


def projective_cover(M: RightModule, U: Sequence[Vec] | None = None) -> Cover:
    """Minimal projective cover of M (or of the submodule spanned by U)."""
    if U is None:
        U = [{k: mpq(1)} for k in range(M.dim)]
    A = M.A
    data = basic_data(A)
    tops = _top(M, U)
    vertices = [j for j, ts in enumerate(tops) for _ in ts]
    P = FreeModule(A, vertices)
    images = []
    for j, ts in enumerate(tops):
        for t in ts:
            for y in data.proj_basis[j]:
                images.append(M.act(t, y))
    kernel = kernel_of_images(images)
    rank = len(images) - len(kernel)
    span = Echelon()
    for u in U:
        span.add(u)
    exact = rank == len(span)
    gens = P.generator_coordinates()
    minimal = all(not (gens & v.keys()) for v in kernel)
    return Cover(P, images, kernel, P.multiplicities(), exact, minimal)


@dataclass
class Resolution:
    terms: list = field(default_factory=list)        # multiplicity vectors of P_0, P_1, ...
    syzygy_dims: list = field(default_factory=list)
    pd: int | None = None                            # None when the bound was exceeded
    bound: int = 0
    exact: bool = True
    minimal: bool = True

    @property
    def exceeded(self) -> bool:
        return self.pd is None

    def verdict(self) -> str:
        return f"pd = {self.pd}" if self.pd is not None else f"pd > {self.bound}"


def minimal_resolution(M: RightModule, bound: int | None = None, U: Sequence[Vec] | None = None) -> Resolution:
    A = M.A
    if bound is None:
        bound = 2 * A.dim
    if bound < 0:
        raise ValueError("bound must be non-negative")
    res = Resolution(bound=bound)
    amb, basis = M, U
    for stage in range(bound + 1):
        cov = projective_cover(amb, basis)
        res.terms.append(cov.multiplicities)
        res.exact &= cov.exact
        res.minimal &= cov.minimal
        res.syzygy_dims.append(len(cov.kernel))
        if not cov.kernel:
            res.pd = stage
            return res
        amb, basis = cov.P, cov.kernel
    return res


@dataclass
class GlobalDimension:
    value: int | None
    bound: int
    per_simple: list

    @property
    def exceeded(self) -> bool:
        return self.value is None

    def verdict(self) -> str:
        return f"gldim = {self.value}" if self.value is not None else f"gldim > {self.bound}"


def global_dimension(A: FinAlgebra, bound: int | None = None, parallel: bool = False) -> GlobalDimension:
    if bound is None:
        bound = 2 * A.dim
    basic_data(A)
    work = lambda i: minimal_resolution(simple(A, i), bound)
    if parallel and A.N > 1:
        with ThreadPoolExecutor() as ex:
            res = list(ex.map(work, range(A.N)))
    else:
        res = [work(i) for i in range(A.N)]
    if any(r.pd is None for r in res):
        return GlobalDimension(None, bound, res)
    return GlobalDimension(max((r.pd for r in res), default=0), bound, res)


# --------------------------------------------------------------------------
# Hom complexes and endomorphism algebras

def _algebra_generators(A: FinAlgebra) -> list[int]:
    try:
        data = basic_data(A)
        return list(A.idempotents) + list(data.generators)
    except ModuleError:
        return list(range(A.dim))


def hom_space(M: RightModule, N: RightModule, q: int = 0) -> list[dict]:
    """Basis of module maps M -> N of degree q, each as ``{(r, l): coeff}``
    meaning f(m_l) = sum_r coeff n_r."""
    if M.A is not N.A:
        raise ModuleError("modules over different algebras")
    A = M.A
    unknowns = [(r, l) for l in range(M.dim) for r in range(N.dim) if N.degree(r) - M.degree(l) == q]
    if not unknowns:
        return []
    uid = {u: t for t, u in enumerate(unknowns)}
    cols: list[Vec] = [dict() for _ in unknowns]
    eq_ids: dict = {}

    def eq(key):
        e = eq_ids.get(key)
        if e is None:
            e = eq_ids[key] = len(eq_ids)
        return e

    by_col: dict[int, list] = {}
    for r, l in unknowns:
        by_col.setdefault(l, []).append(r)
    for x in _algebra_generators(A):
        for l in range(M.dim):
            # f(m_l . x) - f(m_l) . x = 0, one equation per coordinate s of N
            for k, c in M.act_basis(l, x).items():
                for r in by_col.get(k, ()):
                    t = uid[(r, k)]
                    e = eq((l, x, r))
                    cols[t][e] = cols[t].get(e, 0) + c
            for r in by_col.get(l, ()):
                t = uid[(r, l)]
                for s, c in N.act_basis(r, x).items():
                    e = eq((l, x, s))
                    cols[t][e] = cols[t].get(e, 0) - c
    out = []
    for kv in kernel_of_images([vclean(c) for c in cols]):
        out.append({unknowns[t]: c for t, c in kv.items()})
    return out


def _apply_map(f: dict, v: Vec) -> Vec:
    out: Vec = {}
    for (r, l), c in f.items():
        a = v.get(l)
        if a:
            out[r] = out.get(r, 0) + a * c
    return vclean(out)


def _compose(f: dict, g: dict) -> dict:
    """f o g for maps stored as {(row, col): coeff}."""
    by_row: dict[int, list] = {}
    for (r, l), c in g.items():
        by_row.setdefault(r, []).append((l, c))
    out: dict = {}
    for (r, k), c in f.items():
        for l, c2 in by_row.get(k, ()):
            out[(r, l)] = out.get((r, l), 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _matrix_of(M: RightModule, N: RightModule, fn) -> dict:
    out = {}
    for l in range(M.dim):
        for r, c in fn({l: mpq(1)}).items():
            out[(r, l)] = c
    return out


def _degree_range(M: RightModule, N: RightModule) -> list[int]:
    dm = {M.degree(k) for k in range(M.dim)} or {0}
    dn = {N.degree(k) for k in range(N.dim)} or {0}
    return sorted({b - a for a in dm for b in dn})


def _hom_differential(M: RightModule, N: RightModule, f: dict, q: int) -> dict:
    dN = _matrix_of(N, N, N.d)
    dM = _matrix_of(M, M, M.d)
    out = _compose(dN, f)
    sign = -1 if q % 2 else 1
    for k, c in _compose(f, dM).items():
        out[k] = out.get(k, 0) - sign * c
    return {k: v for k, v in out.items() if v}


@dataclass
class HomComplex:
    spaces: dict        # degree -> basis of maps
    differential: dict  # degree -> images of the basis, as coordinate vectors in degree + 1

    def cohomology(self) -> dict:
        dims = {q: len(b) for q, b in self.spaces.items()}
        return complex_cohomology(dims, self.differential)


def _flat(f: dict, index: dict) -> Vec:
    return vclean({index[k]: c for k, c in f.items()})


def hom_complex(M: RightModule, N: RightModule) -> HomComplex:
    spaces = {q: hom_space(M, N, q) for q in _degree_range(M, N)}
    spaces = {q: b for q, b in spaces.items() if b}
    diffs = {}
    entries = {(r, l): t for t, (r, l) in enumerate((r, l) for r in range(N.dim) for l in range(M.dim))}
    for q, basis in spaces.items():
        target = spaces.get(q + 1, [])
        ech = Echelon(track=True)
        for g in target:
            ech.add(_flat(g, entries))
        imgs = []
        for f in basis:
            Df = _hom_differential(M, N, f, q)
            if not Df:
                imgs.append({})
                continue
            c = ech.coordinates(_flat(Df, entries))
            if c is None:
                raise ModuleError("differential of a module map is not a module map")
            imgs.append(c)
        diffs[q] = imgs
    return HomComplex(spaces, diffs)


def dg_endomorphism_algebra(modules: Sequence[RightModule]) -> FinAlgebra:
    """End(M_1 + ... + M_r) with the identities of the summands as idempotents."""
    mods = [M for M in modules if M.dim]
    if not mods:
        raise ModuleError("no nonzero modules")
    A = mods[0].A
    if any(M.A is not A for M in mods):
        raise ModuleError("modules over different algebras")
    r = len(mods)
    # basis: identities first, then every block Hom(M_q, M_p) degree by degree
    elems = []  # (p, q, degree, matrix)
    for p in range(r):
        elems.append((p, p, 0, {(k, k): mpq(1) for k in range(mods[p].dim)}))
    labels = [f"id{p + 1}" for p in range(r)]
    blocks: dict = {}
    for p in range(r):
        for q in range(r):
            for deg in _degree_range(mods[q], mods[p]):
                basis = hom_space(mods[q], mods[p], deg)
                if not basis:
                    continue
                index = {(a, b): t for t, (a, b) in enumerate((a, b) for a in range(mods[p].dim) for b in range(mods[q].dim))}
                ech = Echelon(track=True)
                members = []
                if p == q and deg == 0:
                    ident = elems[p][3]
                    ech.add(_flat(ident, index))
                    members.append(p)
                count = 0
                for f in basis:
                    if ech.add(_flat(f, index)) is not None:
                        members.append(len(elems))
                        count += 1
                        elems.append((p, q, deg, f))
                        labels.append(f"h{p + 1}.{q + 1}^{deg}#{count}")
                blocks[(p, q, deg)] = (ech, index, members)

    def coords(p, q, deg, f):
        if not f:
            return {}
        blk = blocks.get((p, q, deg))
        if blk is None:
            raise ModuleError("composite lands outside the computed Hom spaces")
        ech, index, members = blk
        c = ech.coordinates(_flat(f, index))
        if c is None:
            raise ModuleError("composite is not a module map")
        return {members[t]: v for t, v in c.items()}

    n = len(elems)
    table = []
    for (p, q, d1, f) in elems:
        row = []
        for (p2, q2, d2, g) in elems:
            row.append(coords(p, q2, d1 + d2, _compose(f, g)) if q == p2 else {})
        table.append(row)
    diff = None
    if any(M.differential for M in mods):
        diff = []
        for (p, q, d1, f) in elems:
            diff.append(coords(p, q, d1 + 1, _hom_differential(mods[q], mods[p], f, d1)))
    return FinAlgebra(labels, table, list(range(r)), degrees=[e[2] for e in elems],
                      differential=diff, meta={"summands": [M.dim for M in mods]})


def filtration_summands(A: FinAlgebra) -> list[RightModule]:
    """The modules e_i A / e_i J_p for p = 1..n, where J_p is the internal
    DG ideal of the p-th radical power and n the nilpotency index."""
    from .algebra import internal_ideal, power_ideal, nilpotency_index
    J = radical(A)
    n = nilpotency_index(J)
    reg = regular_module(A)
    out = []
    for p in range(1, n + 1):
        Jp = power_ideal(J, p) if p > 1 else J
        ideal = internal_ideal(A, Jp) if A.differential else Jp
        for i, e in enumerate(A.idempotents):
            Pi = SubModule(reg, [{e: mpq(1)}])
            sub = [Pi.coordinates(v) for v in (A.mul({e: mpq(1)}, w) for w in ideal.basis) if v]
            Q = QuotientModule(Pi, sub)
            if Q.dim:
                out.append(Q)
    return out
