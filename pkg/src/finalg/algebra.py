"""Finite-dimensional associative unital algebras over Q.

An algebra is stored by a basis and a sparse structure-constant table
``table[i][j] = {k: c}`` meaning ``b_i * b_j = sum_k c * b_k``.  Optional
integer degrees per basis element and a differential (``d(b_i)`` as a sparse
vector) turn it into a DG algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactmat import Echelon, Vec, kernel_of_images, to_q, vaxpy, vclean

__all__ = [
    "FinAlgebra", "Violation", "ValidationReport", "validate", "GradedIdeal",
    "DGIdeal", "radical", "ideal_generated", "power_ideal", "nilpotency_index",
    "internal_ideal", "external_ideal", "quotient", "cohomology_dims",
    "complex_cohomology", "check_quotient_complex_acyclic", "opposite",
    "direct_product", "semisimple", "AlgebraError", "NotAnIdeal", "NotNilpotent",
    "apply_linear", "homomorphism_violations",
]


class AlgebraError(ValueError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


def _freeze_table(table) -> tuple:
    return tuple(tuple(vclean({int(k): to_q(c) for k, c in cell.items()}) for cell in row) for row in table)


class FinAlgebra:
    """Finite-dimensional algebra with declared complete orthogonal idempotents."""

    def __init__(self, labels: Sequence[str], table, idempotents: Sequence[int],
                 unit: Vec | None = None, degrees: Sequence[int] | None = None,
                 differential: Sequence[Vec] | None = None, meta: dict | None = None):
        self.labels = tuple(labels)
        n = len(self.labels)
        self.table = _freeze_table(table)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise AlgebraError("structure constant table has the wrong shape")
        self.idempotents = tuple(idempotents)
        self.unit = vclean({k: to_q(c) for k, c in unit.items()}) if unit is not None \
            else {i: mpq(1) for i in self.idempotents}
        self.degrees = tuple(int(d) for d in degrees) if degrees is not None else None
        if self.degrees is not None and len(self.degrees) != n:
            raise AlgebraError("degree list has the wrong length")
        if differential is not None:
            differential = tuple(vclean({int(k): to_q(c) for k, c in v.items()}) for v in differential)
            if len(differential) != n:
                raise AlgebraError("differential has the wrong length")
            if not any(differential):
                differential = None
        self.differential = differential
        self.meta = dict(meta or {})
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self) -> str:
        kind = "DG" if self.differential else ("graded " if self.is_graded else "")
        return f"<{kind}FinAlgebra dim={self.dim} N={self.N}>"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def N(self) -> int:
        return len(self.idempotents)

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None and any(self.degrees)

    def degree(self, i: int) -> int:
        return self.degrees[i] if self.degrees is not None else 0

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def basis_vector(self, i) -> Vec:
        if isinstance(i, str):
            i = self.index(i)
        return {i: mpq(1)}

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        t = self.table
        for i, a in x.items():
            row = t[i]
            for j, b in y.items():
                cell = row[j]
                if cell:
                    vaxpy(out, a * b, cell)
        return out

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.table[i][j]

    def d(self, x: Vec) -> Vec:
        if not self.differential:
            return {}
        out: Vec = {}
        for i, a in x.items():
            vaxpy(out, a, self.differential[i])
        return out

    def vector_degree(self, x: Vec) -> int | None:
        """Degree of a homogeneous vector; None for mixed or zero vectors."""
        degs = {self.degree(i) for i in x}
        return degs.pop() if len(degs) == 1 else None

    def degree_window(self) -> list[int]:
        if self.degrees is None:
            return [0]
        return sorted(set(self.degrees))

    def basis_in_degree(self, deg: int) -> list[int]:
        return [i for i in range(self.dim) if self.degree(i) == deg]

    def element(self, terms: dict) -> Vec:
        """Build a vector from ``{label_or_index: coefficient}``."""
        out: Vec = {}
        for k, c in terms.items():
            i = self.index(k) if isinstance(k, str) else k
            vaxpy(out, to_q(c), {i: mpq(1)})
        return out

    def format_vector(self, x: Vec) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = x[k]
            lab = self.labels[k]
            if c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append("-" + lab)
            else:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts).replace("+ -", "- ")

    # Peirce data ---------------------------------------------------------

    @cached_property
    def peirce(self) -> tuple | None:
        """(left, right) idempotent positions per basis element, or None if the
        basis is not adapted to the Peirce decomposition."""
        out = []
        for x in range(self.dim):
            left = [p for p, e in enumerate(self.idempotents) if self.table[e][x]]
            right = [p for p, e in enumerate(self.idempotents) if self.table[x][e]]
            if len(left) != 1 or len(right) != 1:
                return None
            l, r = left[0], right[0]
            if self.table[self.idempotents[l]][x] != {x: 1} or self.table[x][self.idempotents[r]] != {x: 1}:
                return None
            out.append((l, r))
        return tuple(out)

    def is_peirce_basic(self) -> bool:
        """Idempotents are basis elements and every other basis element is a
        Peirce-homogeneous element of the radical."""
        if self.peirce is None:
            return False
        if any(self.idempotents.count(e) != 1 for e in self.idempotents):
            return False
        J = radical(self)
        idem = set(self.idempotents)
        rest = [i for i in range(self.dim) if i not in idem]
        return J.dim == len(rest) and all(J.contains({i: mpq(1)}) for i in rest)

    def change_basis(self, vectors: Sequence[Vec], labels: Sequence[str],
                     idempotents: Sequence[int], meta: dict | None = None) -> "FinAlgebra":
        """Same algebra written in a new basis given by ``vectors``."""
        if len(vectors) != self.dim:
            raise AlgebraError("a basis must have dim elements")
        ech = Echelon(track=True)
        for v in vectors:
            if ech.add(v) is None:
                raise AlgebraError("vectors are linearly dependent")

        def coords(v):
            c = ech.coordinates(v)
            assert c is not None
            return c

        table = [[coords(self.mul(x, y)) for y in vectors] for x in vectors]
        degrees = None
        if self.degrees is not None:
            degrees = []
            for v in vectors:
                dg = self.vector_degree(v)
                if dg is None:
                    raise AlgebraError("new basis is not homogeneous")
                degrees.append(dg)
        diff = [coords(self.d(v)) for v in vectors] if self.differential else None
        return FinAlgebra(labels, table, idempotents, unit=coords(self.unit), degrees=degrees,
                          differential=diff, meta=meta if meta is not None else dict(self.meta))

    def with_idempotent_basis(self, idem_vectors: Sequence[Vec], idem_labels: Sequence[str] | None = None) -> "FinAlgebra":
        """Rebase so that the given idempotent vectors become basis elements
        (placed first); the remaining basis elements are kept in order."""
        ech = Echelon()
        vectors, labels = [], []
        for p, v in enumerate(idem_vectors):
            if ech.add(v) is None:
                raise AlgebraError("idempotent vectors are dependent")
            vectors.append(v)
            single = len(v) == 1 and next(iter(v.values())) == 1
            labels.append(self.labels[next(iter(v))] if single and idem_labels is None
                          else (idem_labels[p] if idem_labels else f"e{p + 1}"))
        for i in range(self.dim):
            v = {i: mpq(1)}
            if ech.add(v) is not None:
                vectors.append(v)
                labels.append(self.labels[i])
        return self.change_basis(vectors, labels, list(range(len(idem_vectors))))


# --------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind} at {self.witness}: {self.detail}" if self.detail else f"{self.kind} at {self.witness}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    max_witnesses: int = 25

    @property
    def ok(self) -> bool:
        return not self.counts

    def kinds(self) -> set:
        return set(self.counts)

    def record(self, kind: str, witness: tuple, detail: str = ""):
        n = self.counts.get(kind, 0)
        self.counts[kind] = n + 1
        if n < self.max_witnesses:
            self.violations.append(Violation(kind, witness, detail))

    def first(self, kind: str | None = None) -> Violation | None:
        for v in self.violations:
            if kind is None or v.kind == kind:
                return v
        return None

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{k} x{n}" for k, n in sorted(self.counts.items()))


def validate(A: FinAlgebra, check_primitive: bool = True) -> ValidationReport:
    rep = ValidationReport()
    n = A.dim
    t = A.table
    lab = A.labels

    # associativity on basis triples; (x_i x_j) x_k and x_i (x_j x_k) can only
    # be nonzero for k in the support of row j or of the rows s in x_i x_j
    nz = [[k for k, cell in enumerate(row) if cell] for row in t]
    for i in range(n):
        ti = t[i]
        for j in range(n):
            ij = ti[j]
            tj = t[j]
            ks = nz[j]
            if ij:
                ks = set(ks)
                for s in ij:
                    ks.update(nz[s])
                ks = sorted(ks)
            for k in ks:
                jk = tj[k]
                lhs: Vec = {}
                for s, c in ij.items():
                    cell = t[s][k]
                    if cell:
                        vaxpy(lhs, c, cell)
                rhs: Vec = {}
                for s, c in jk.items():
                    cell = ti[s]
                    if cell:
                        vaxpy(rhs, c, cell)
                if lhs != rhs:
                    rep.record("associativity", (lab[i], lab[j], lab[k]))

    # unit
    for i in range(n):
        b = {i: mpq(1)}
        if A.mul(A.unit, b) != b or A.mul(b, A.unit) != b:
            rep.record("unit", (lab[i],))

    # idempotents
    total: Vec = {}
    for p, e in enumerate(A.idempotents):
        vaxpy(total, 1, {e: mpq(1)})
        for q, f in enumerate(A.idempotents):
            expect = {e: mpq(1)} if p == q else {}
            if t[e][f] != expect:
                rep.record("idempotent-orthogonality", (lab[e], lab[f]))
    if total != A.unit:
        rep.record("idempotent-sum", tuple(lab[e] for e in A.idempotents), "sum of idempotents is not the unit")

    if A.degrees is not None:
        for i in range(n):
            for j in range(n):
                for k in t[i][j]:
                    if A.degree(k) != A.degree(i) + A.degree(j):
                        rep.record("grading", (lab[i], lab[j]), f"component {lab[k]}")
                        break
        if any(A.degree(k) for k in A.unit):
            rep.record("grading", ("1",), "unit is not of degree 0")

    if A.differential:
        if A.degrees is None:
            rep.record("differential-without-grading", ())
        dd = A.differential
        for i in range(n):
            for k in dd[i]:
                if A.degree(k) != A.degree(i) + 1:
                    rep.record("differential-degree", (lab[i],), f"component {lab[k]}")
                    break
            if A.d(dd[i]):
                rep.record("d-squared", (lab[i],))
        for e in A.idempotents:
            if dd[e]:
                rep.record("idempotent-differential", (lab[e],), "d(e) != 0")
        for i in range(n):
            sign = -1 if A.degree(i) % 2 else 1
            for j in range(n):
                lhs = A.d(t[i][j])
                rhs = A.mul(dd[i], {j: mpq(1)})
                vaxpy(rhs, sign, A.mul({i: mpq(1)}, dd[j]))
                if lhs != rhs:
                    rep.record("leibniz", (lab[i], lab[j]))

    if check_primitive and rep.ok and A.peirce is not None:
        J = radical(A)
        for p, e in enumerate(A.idempotents):
            corner = [x for x in range(n) if A.peirce[x] == (p, p)]
            rad = sum(1 for v in J.basis if all(A.peirce[k] == (p, p) for k in v))
            if len(corner) - rad != 1:
                rep.record("primitivity", (lab[e],), "e A e / e J e is not one-dimensional")
    return rep


# --------------------------------------------------------------------------
# ideals

class GradedIdeal:
    """Subspace of an algebra given by (homogeneous) spanning vectors."""

    kind = "ideal"

    def __init__(self, parent: FinAlgebra, vectors: Iterable[Vec]):
        self.parent = parent
        by_degree: dict[int, Echelon] = {}
        mixed = Echelon()
        for v in vectors:
            v = vclean(v)
            if not v:
                continue
            dg = parent.vector_degree(v) if parent.degrees is not None else 0
            if dg is None:
                for part in _homogeneous_parts(parent, v):
                    by_degree.setdefault(parent.vector_degree(part), Echelon()).add(part)
            else:
                by_degree.setdefault(dg, Echelon()).add(v)
        self._by_degree = {dg: e for dg, e in by_degree.items() if len(e)}
        for e in self._by_degree.values():
            mixed.add_many(e.basis())
        self._ech = mixed

    @property
    def basis(self) -> list[Vec]:
        out = []
        for dg in sorted(self._by_degree):
            out.extend(self._by_degree[dg].basis())
        return out

    @property
    def dim(self) -> int:
        return len(self._ech)

    def basis_in_degree(self, deg: int) -> list[Vec]:
        e = self._by_degree.get(deg)
        return e.basis() if e else []

    def degrees(self) -> list[int]:
        return sorted(self._by_degree)

    def contains(self, v: Vec) -> bool:
        return self._ech.contains(v)

    def normal_form(self, v: Vec) -> Vec:
        return self._ech.normal_form(v)

    @property
    def pivots(self) -> list[int]:
        return self._ech.pivots

    def is_zero(self) -> bool:
        return self.dim == 0

    def __le__(self, other: "GradedIdeal") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.dim == other.dim and self <= other

    def __hash__(self):
        return id(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} dim={self.dim} of {self.parent!r}>"

    def is_two_sided(self) -> bool:
        A = self.parent
        for v in self.basis:
            for i in range(A.dim):
                b = {i: mpq(1)}
                if not self.contains(A.mul(b, v)) or not self.contains(A.mul(v, b)):
                    return False
        return True

    def is_d_closed(self) -> bool:
        A = self.parent
        return all(self.contains(A.d(v)) for v in self.basis)


class DGIdeal(GradedIdeal):
    """A graded two-sided ideal closed under the differential."""

    kind = "dg-ideal"

    def __init__(self, parent: FinAlgebra, vectors: Iterable[Vec], check: bool = True):
        super().__init__(parent, vectors)
        if check and not self.is_d_closed():
            raise NotAnIdeal("subspace is not closed under the differential")


def _homogeneous_parts(A: FinAlgebra, v: Vec) -> list[Vec]:
    parts: dict[int, Vec] = {}
    for k, c in v.items():
        parts.setdefault(A.degree(k), {})[k] = c
    return list(parts.values())


def ideal_generated(A: FinAlgebra, gens: Iterable[Vec]) -> GradedIdeal:
    """Two-sided ideal A x A generated by the given elements (split into homogeneous parts)."""
    seeds = []
    for g in gens:
        seeds.extend(_homogeneous_parts(A, vclean(g)) if A.degrees is not None else [vclean(g)])
    seeds = [s for s in seeds if s]
    ech = Echelon()
    vecs = []
    for g in seeds:
        for i in range(A.dim):
            left = A.mul({i: mpq(1)}, g)
            if not left:
                continue
            for j in range(A.dim):
                w = A.mul(left, {j: mpq(1)})
                if w and ech.add(w) is not None:
                    vecs.append(w)
    return GradedIdeal(A, vecs)


def radical(A: FinAlgebra) -> GradedIdeal:
    """Jacobson radical by the characteristic-zero trace criterion:
    x is in J iff tr(L_{xa}) = 0 for every basis element a."""
    n = A.dim
    tr = []
    for k in range(n):
        s = mpq(0)
        row = A.table[k]
        for i in range(n):
            s += row[i].get(i, 0)
        tr.append(s)
    nonzero = {k: s for k, s in enumerate(tr) if s}
    vectors = []
    for deg in A.degree_window():
        xs = A.basis_in_degree(deg)
        ys = A.basis_in_degree(-deg)
        images = []
        for x in xs:
            row = A.table[x]
            img = {}
            for y in ys:
                s = mpq(0)
                for k, c in row[y].items():
                    if k in nonzero:
                        s += c * nonzero[k]
                if s:
                    img[y] = s
            images.append(img)
        for kv in kernel_of_images(images):
            vectors.append({xs[j]: c for j, c in kv.items()})
    return GradedIdeal(A, vectors)


def power_ideal(J: GradedIdeal, p: int) -> GradedIdeal:
    if p < 1:
        raise ValueError("power must be at least 1")
    A = J.parent
    cur = J
    base = J.basis
    for _ in range(p - 1):
        prods = [A.mul(x, y) for x in cur.basis for y in base]
        cur = GradedIdeal(A, prods)
        if cur.is_zero():
            break
    return cur


def nilpotency_index(J: GradedIdeal) -> int:
    """Least p with J^p = 0."""
    A = J.parent
    p, cur = 1, J
    while not cur.is_zero():
        if p > A.dim:
            raise NotNilpotent("ideal is not nilpotent, so it is not inside the radical")
        cur = GradedIdeal(A, [A.mul(x, y) for x in cur.basis for y in J.basis])
        p += 1
    return p


def internal_ideal(A: FinAlgebra, I: GradedIdeal) -> DGIdeal:
    """{r in I : d(r) in I}, computed degree by degree as ker(I -> A/I)."""
    if not I.is_two_sided():
        raise NotAnIdeal("subspace is not a two-sided ideal")
    vectors = []
    for deg in I.degrees():
        basis = I.basis_in_degree(deg)
        images = [I.normal_form(A.d(v)) for v in basis]
        for kv in kernel_of_images(images):
            w: Vec = {}
            for j, c in kv.items():
                vaxpy(w, c, basis[j])
            vectors.append(w)
    return DGIdeal(A, vectors)


def external_ideal(A: FinAlgebra, I: GradedIdeal) -> DGIdeal:
    """I + d(I)."""
    if not I.is_two_sided():
        raise NotAnIdeal("subspace is not a two-sided ideal")
    vectors = list(I.basis) + [A.d(v) for v in I.basis]
    return DGIdeal(A, vectors)


def quotient(A: FinAlgebra, I: GradedIdeal, check: bool = True) -> FinAlgebra:
    """A/I with the basis of non-pivot coordinates of I."""
    if check:
        if not I.is_two_sided():
            raise NotAnIdeal("subspace is not a two-sided ideal")
        if A.differential and not I.is_d_closed():
            raise NotAnIdeal("ideal is not closed under the differential")
    piv = set(I.pivots)
    keep = [i for i in range(A.dim) if i not in piv]
    pos = {k: p for p, k in enumerate(keep)}

    def nf(v: Vec) -> Vec:
        return {pos[k]: c for k, c in I.normal_form(v).items()}

    table = [[nf(A.table[i][j]) for j in keep] for i in keep]
    idem_vecs = [nf({e: mpq(1)}) for e in A.idempotents]
    idem_vecs = [v for v in idem_vecs if v]
    diff = [nf(A.differential[i]) for i in keep] if A.differential else None
    degrees = [A.degree(i) for i in keep] if A.degrees is not None else None
    unit = nf(A.unit)
    simple = all(len(v) == 1 and next(iter(v.values())) == 1 for v in idem_vecs)
    labels = [A.labels[i] for i in keep]
    if simple:
        return FinAlgebra(labels, table, [next(iter(v)) for v in idem_vecs], unit=unit,
                          degrees=degrees, differential=diff)
    tmp = FinAlgebra(labels, table, [], unit=unit, degrees=degrees, differential=diff)
    return tmp.with_idempotent_basis(idem_vecs)


# --------------------------------------------------------------------------
# cohomology

def complex_cohomology(dims: dict, differentials: dict) -> dict:
    """Cohomology dimensions of a finite complex.

    ``dims[l]`` is the dimension in degree l and ``differentials[l]`` lists the
    images (sparse vectors in degree l+1 coordinates) of the degree-l basis.
    """
    ranks = {}
    for l, n in dims.items():
        images = differentials.get(l, [{}] * n)
        ranks[l] = n - len(kernel_of_images(images))
    return {l: n - ranks[l] - ranks.get(l - 1, 0) for l, n in sorted(dims.items())}


def cohomology_dims(A: FinAlgebra) -> dict:
    """dim H^l of (A, d) per degree; with no differential these are the graded dims."""
    dims, diffs = {}, {}
    for deg in A.degree_window():
        basis = A.basis_in_degree(deg)
        nxt = {k: p for p, k in enumerate(A.basis_in_degree(deg + 1))}
        dims[deg] = len(basis)
        diffs[deg] = [{nxt[k]: c for k, c in A.d({i: mpq(1)}).items()} for i in basis]
    return complex_cohomology(dims, diffs)


def check_quotient_complex_acyclic(A: FinAlgebra, I: GradedIdeal) -> bool:
    """Whether the complex I_+/I_- induced by d has zero cohomology."""
    lo = internal_ideal(A, I)
    hi = external_ideal(A, I)
    degs = sorted(set(hi.degrees()) | set(lo.degrees()))
    reps = {}
    for deg in degs:
        ech = Echelon()
        ech.add_many(lo.basis_in_degree(deg))
        comp = []
        for v in hi.basis_in_degree(deg):
            if ech.add(v) is not None:
                comp.append(v)
        reps[deg] = comp
    dims, diffs = {}, {}
    for deg in degs:
        dims[deg] = len(reps[deg])
        target = reps.get(deg + 1, [])
        ech = Echelon(track=True)
        ech.add_many(lo.basis_in_degree(deg + 1))
        nlo = len(ech)
        for v in target:
            ech.add(v)
        imgs = []
        for v in reps[deg]:
            coords = ech.coordinates(A.d(v))
            if coords is None:
                raise AlgebraError("differential leaves the external ideal")
            imgs.append({k - nlo: c for k, c in coords.items() if k >= nlo})
        diffs[deg] = imgs
    return all(h == 0 for h in complex_cohomology(dims, diffs).values())


# --------------------------------------------------------------------------
# small constructions

def opposite(A: FinAlgebra) -> FinAlgebra:
    """Opposite algebra with the Koszul sign x*y = (-1)^{|x||y|} yx."""
    n = A.dim
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = A.table[j][i]
            if A.degree(i) % 2 and A.degree(j) % 2:
                cell = {k: -c for k, c in cell.items()}
            row.append(cell)
        table.append(row)
    meta = {k: v for k, v in A.meta.items() if k != "paths"}
    return FinAlgebra(A.labels, table, A.idempotents, unit=A.unit, degrees=A.degrees,
                      differential=A.differential, meta=meta)


def semisimple(N: int) -> FinAlgebra:
    """Q^N with its standard idempotents."""
    table = [[{i: mpq(1)} if i == j else {} for j in range(N)] for i in range(N)]
    return FinAlgebra([f"e{i + 1}" for i in range(N)], table, list(range(N)), degrees=[0] * N)


def direct_product(A: FinAlgebra, B: FinAlgebra) -> FinAlgebra:
    n = A.dim
    table = [[{} for _ in range(n + B.dim)] for _ in range(n + B.dim)]
    for i in range(n):
        for j in range(n):
            table[i][j] = A.table[i][j]
    for i in range(B.dim):
        for j in range(B.dim):
            table[n + i][n + j] = {n + k: c for k, c in B.table[i][j].items()}
    labels = list(A.labels) + [l + "'" if l in A.labels else l for l in B.labels]
    degrees = None
    if A.degrees is not None or B.degrees is not None:
        degrees = [A.degree(i) for i in range(n)] + [B.degree(i) for i in range(B.dim)]
    diff = None
    if A.differential or B.differential:
        diff = [A.d({i: mpq(1)}) for i in range(n)] + \
               [{n + k: c for k, c in B.d({i: mpq(1)}).items()} for i in range(B.dim)]
    return FinAlgebra(labels, table, list(A.idempotents) + [n + e for e in B.idempotents],
                      degrees=degrees, differential=diff)


def apply_linear(images: Sequence[Vec], x: Vec) -> Vec:
    out: Vec = {}
    for i, c in x.items():
        vaxpy(out, c, images[i])
    return out


def homomorphism_violations(A: FinAlgebra, B: FinAlgebra, images: Sequence[Vec],
                            chain: bool = False, limit: int = 5) -> list[str]:
    """Check that basis images define a unital (chain) algebra map A -> B."""
    bad = []
    if apply_linear(images, A.unit) != B.unit:
        bad.append("unit is not preserved")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = apply_linear(images, A.table[i][j])
            rhs = B.mul(images[i], images[j])
            if lhs != rhs:
                bad.append(f"product {A.labels[i]}*{A.labels[j]} not preserved")
                if len(bad) >= limit:
                    return bad
    if B.degrees is not None or A.degrees is not None:
        for i in range(A.dim):
            if images[i] and any(B.degree(k) != A.degree(i) for k in images[i]):
                bad.append(f"degree of {A.labels[i]} not preserved")
    if chain:
        for i in range(A.dim):
            if apply_linear(images, A.d({i: mpq(1)})) != B.d(images[i]):
                bad.append(f"differential at {A.labels[i]} not preserved")
    return bad[:limit]
