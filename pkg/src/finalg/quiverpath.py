"""Quivers, paths, relations and finite-dimensional quiver algebras.

Vertices are numbered from 0 internally and printed from 1 (``e1``, ``e2``).
A path stores its arrows in traversal order; its label is written as a
right-to-left product, so traversing ``c1`` then ``b1`` then ``c2`` is the
path ``c2*b1*c1``.  Multiplication ``x*y`` of paths is "first y, then x".
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from .algebra import FinAlgebra, GradedIdeal
from .exactmat import Echelon, Vec, to_q, vaxpy, vclean

__all__ = [
    "Arrow", "Quiver", "Path", "RelationSet", "NotNilpotentAtBound", "QuiverError",
    "enumerate_paths", "quotient_algebra", "path_algebra", "LongestPath",
    "CycleDetected", "longest_path", "two_vertex_quiver", "arrow_ideal",
    "monomial_paths",
]

_LABEL = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_IDEM = re.compile(r"^e([0-9]+)$")


class QuiverError(ValueError):
    pass


class NotNilpotentAtBound(ValueError):
    def __init__(self, path_label: str, bound: int):
        super().__init__(f"path {path_label} of length {bound} is not in the relation ideal; "
                         f"raise the truncation bound or the algebra is infinite-dimensional")
        self.path = path_label
        self.bound = bound


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int
    degree: int = 0


class Quiver:
    def __init__(self, N: int, arrows: Iterable, allow_loops: bool = False):
        if N < 0:
            raise QuiverError("vertex count must be non-negative")
        self.N = N
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            arrs.append(a)
        self.arrows = tuple(arrs)
        self.allow_loops = allow_loops
        seen = set()
        for a in self.arrows:
            if not _LABEL.match(a.label) or _IDEM.match(a.label):
                raise QuiverError(f"bad arrow label {a.label!r}")
            if a.label in seen:
                raise QuiverError(f"duplicate arrow label {a.label!r}")
            seen.add(a.label)
            if not (0 <= a.source < N and 0 <= a.target < N):
                raise QuiverError(f"arrow {a.label} has an endpoint out of range")
            if a.source == a.target and not allow_loops:
                raise QuiverError(f"arrow {a.label} is a loop")
        self._by_label = {a.label: i for i, a in enumerate(self.arrows)}
        self._out: list[list[int]] = [[] for _ in range(N)]
        for i, a in enumerate(self.arrows):
            self._out[a.source].append(i)

    def __repr__(self) -> str:
        return f"Quiver(N={self.N}, arrows={[a.label for a in self.arrows]})"

    def arrow_index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise QuiverError(f"unknown arrow {label!r}") from None

    def outgoing(self, v: int) -> list[int]:
        return self._out[v]

    def vertex(self, v: int) -> "Path":
        return Path(v, ())

    def path(self, text: str) -> "Path":
        """Parse ``c2*b1*c1`` (right-to-left) or ``e1`` into a path."""
        text = text.replace(" ", "")
        m = _IDEM.match(text)
        if m:
            v = int(m.group(1)) - 1
            if not 0 <= v < self.N:
                raise QuiverError(f"no vertex {v + 1}")
            return Path(v, ())
        idx = [self.arrow_index(tok) for tok in reversed(text.split("*"))]
        return self.path_from_arrows(idx)

    def path_from_arrows(self, idx: Sequence[int]) -> "Path":
        if not idx:
            raise QuiverError("an empty path needs a vertex")
        for a, b in zip(idx, idx[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise QuiverError(f"arrows {self.arrows[a].label} and {self.arrows[b].label} do not compose")
        return Path(self.arrows[idx[0]].source, tuple(idx))

    def target(self, p: "Path") -> int:
        return self.arrows[p.arrows[-1]].target if p.arrows else p.start

    def label(self, p: "Path") -> str:
        if not p.arrows:
            return f"e{p.start + 1}"
        return "*".join(self.arrows[i].label for i in reversed(p.arrows))

    def degree(self, p: "Path") -> int:
        return sum(self.arrows[i].degree for i in p.arrows)

    def compose(self, x: "Path", y: "Path") -> "Path | None":
        """x*y, i.e. y followed by x; None when not composable."""
        if self.target(y) != x.start:
            return None
        if not y.arrows:
            return x
        return Path(y.start, y.arrows + x.arrows)

    def opposite(self) -> "Quiver":
        return Quiver(self.N, [Arrow(a.label, a.target, a.source, a.degree) for a in self.arrows],
                      self.allow_loops)


@dataclass(frozen=True, order=True)
class Path:
    start: int
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.start)


def two_vertex_quiver(n: int, m: int, c_degrees: Sequence[int] | None = None,
                      b_degrees: Sequence[int] | None = None, c_names=None, b_names=None) -> Quiver:
    """Q_{n,m}: arrows c_1..c_n from vertex 1 to 2 and b_1..b_m from 2 to 1."""
    cd = list(c_degrees) if c_degrees is not None else [0] * n
    bd = list(b_degrees) if b_degrees is not None else [0] * m
    cn = list(c_names) if c_names is not None else [f"c{i + 1}" for i in range(n)]
    bn = list(b_names) if b_names is not None else [f"b{i + 1}" for i in range(m)]
    if len(cd) != n or len(bd) != m or len(cn) != n or len(bn) != m:
        raise QuiverError("degree/name lists must match the arrow counts")
    arrows = [Arrow(cn[i], 0, 1, cd[i]) for i in range(n)] + [Arrow(bn[j], 1, 0, bd[j]) for j in range(m)]
    return Quiver(2, arrows)


def enumerate_paths(Q: Quiver, maxlen: int) -> list[Path]:
    """All paths of length <= maxlen ordered by (length, arrow indices)."""
    out = [Path(v, ()) for v in range(Q.N)]
    layer = [Path(Q.arrows[i].source, (i,)) for i in range(len(Q.arrows))] if maxlen >= 1 else []
    while layer:
        layer.sort(key=Path.sort_key)
        out.extend(layer)
        if layer[0].length >= maxlen:
            break
        nxt = []
        for p in layer:
            for i in Q.outgoing(Q.target(p)):
                nxt.append(Path(p.start, p.arrows + (i,)))
        layer = nxt
    return out


# --------------------------------------------------------------------------
# relations

@dataclass
class RelationSet:
    quiver: Quiver
    relations: list = field(default_factory=list)  # list of {Path: mpq}
    bound: int = 4

    def __post_init__(self):
        if self.bound < 2:
            raise QuiverError("truncation bound must be at least 2")
        rels = []
        for r in self.relations:
            r = {p: to_q(c) for p, c in r.items() if c}
            if not r:
                continue
            ends = {(p.start, self.quiver.target(p)) for p in r}
            if len(ends) != 1:
                raise QuiverError("relation paths are not parallel: " + self.format(r))
            if any(p.length < 2 for p in r):
                raise QuiverError("relation contains a path of length < 2: " + self.format(r))
            rels.append(r)
        self.relations = rels

    def add(self, terms: dict):
        """Add a relation given as ``{path_text_or_Path: coefficient}``."""
        r = {}
        for p, c in terms.items():
            if isinstance(p, str):
                p = self.quiver.path(p)
            r[p] = r.get(p, mpq(0)) + to_q(c)
        self.relations.append(r)
        self.__post_init__()

    def format(self, r: dict) -> str:
        parts = []
        for p in sorted(r, key=Path.sort_key):
            c = r[p]
            lab = self.quiver.label(p)
            parts.append(lab if c == 1 else ("-" + lab if c == -1 else f"{c}*{lab}"))
        return " + ".join(parts).replace("+ -", "- ")

    def is_monomial(self) -> bool:
        return all(len(r) == 1 for r in self.relations)


class _PathIndex:
    def __init__(self, Q: Quiver, paths: list[Path]):
        self.by_start: dict[tuple, list[Path]] = {}
        self.by_target: dict[tuple, list[Path]] = {}
        for p in paths:
            self.by_start.setdefault((p.length, p.start), []).append(p)
            self.by_target.setdefault((p.length, Q.target(p)), []).append(p)


def _sandwiches(Q: Quiver, pidx: _PathIndex, rels: list, room: int, shortest: bool):
    """Yield (p, r, q) with p*r*q defined and len(p) + len(q) + len(r) <= room,
    where len(r) is its shortest or its longest term."""
    for r in rels:
        rp = next(iter(r))
        rs, rt = rp.start, Q.target(rp)
        lens = [w.length for w in r]
        extra = room - (min(lens) if shortest else max(lens))
        for lq in range(extra + 1):
            qs = pidx.by_target.get((lq, rs), [])
            for lp in range(extra - lq + 1):
                for p in pidx.by_start.get((lp, rt), []):
                    for q in qs:
                        yield p, r, q


def quotient_algebra(Q: Quiver, rels: RelationSet | None = None, bound: int | None = None) -> FinAlgebra:
    """kQ/I for the ideal generated by ``rels``, truncated at the bound.

    Every path of length equal to the bound must lie in the ideal; then all
    longer paths do too and the quotient is computed inside paths of length
    below the bound.
    """
    if rels is None:
        rels = RelationSet(Q, [], bound if bound is not None else 2)
    L = bound if bound is not None else rels.bound
    if L < 2:
        raise QuiverError("truncation bound must be at least 2")
    paths = enumerate_paths(Q, L)
    index = {p: i for i, p in enumerate(paths)}
    pidx = _PathIndex(Q, paths)

    def sandwich(p, r, q, limit):
        v: Vec = {}
        for w, c in r.items():
            full = Q.compose(p, Q.compose(w, q))
            if full.length < limit:
                v[index[full]] = v.get(index[full], mpq(0)) + c
        return vclean(v)

    top = [p for p in paths if p.length == L]
    if top:
        check = Echelon()
        for p, r, q in _sandwiches(Q, pidx, rels.relations, L, False):
            check.add(sandwich(p, r, q, L + 1))
        for w in top:
            if not check.contains({index[w]: mpq(1)}):
                raise NotNilpotentAtBound(Q.label(w), L)

    ideal = Echelon()
    for p, r, q in _sandwiches(Q, pidx, rels.relations, L - 1, True):
        v = sandwich(p, r, q, L)
        if v:
            ideal.add(v)
    pivots = set(ideal.pivots)
    keep = [i for i, p in enumerate(paths) if p.length < L and i not in pivots]
    pos = {k: j for j, k in enumerate(keep)}
    kept_paths = [paths[i] for i in keep]

    table = []
    for x in kept_paths:
        row = []
        for y in kept_paths:
            xy = Q.compose(x, y)
            if xy is None or xy.length >= L:
                row.append({})
                continue
            nf = ideal.normal_form({index[xy]: mpq(1)})
            row.append({pos[k]: c for k, c in nf.items()})
        table.append(row)
    idem = [pos[index[Path(v, ())]] for v in range(Q.N)]
    meta = {"quiver": Q, "paths": kept_paths, "relations": rels, "bound": L}
    return FinAlgebra([Q.label(p) for p in kept_paths], table, idem,
                      degrees=[Q.degree(p) for p in kept_paths], meta=meta)


def path_algebra(Q: Quiver, bound: int = 2) -> FinAlgebra:
    """kQ for a quiver whose paths all have length < bound."""
    return quotient_algebra(Q, RelationSet(Q, [], bound))


def arrow_ideal(A: FinAlgebra) -> GradedIdeal:
    """Span of the positive-length paths of a quiver algebra."""
    paths = A.meta.get("paths")
    if paths is None:
        raise QuiverError("algebra does not carry path data")
    return GradedIdeal(A, [{i: mpq(1)} for i, p in enumerate(paths) if p.length > 0])


def monomial_paths(Q: Quiver, monomials: Iterable[Path], bound: int) -> list[Path]:
    """Paths of length < bound containing no monomial as a contiguous subpath."""
    forbidden = {m.arrows for m in monomials}
    out = []
    for p in enumerate_paths(Q, bound - 1):
        a = p.arrows
        hit = any(a[i:j] in forbidden for i in range(len(a)) for j in range(i + 2, len(a) + 1))
        if not hit:
            out.append(p)
    return out


# --------------------------------------------------------------------------
# longest paths

@dataclass(frozen=True)
class LongestPath:
    length: int
    witness: tuple  # vertices visited


@dataclass(frozen=True)
class CycleDetected:
    witness: tuple  # vertices of an oriented cycle, first repeated at the end


def longest_path(Q: Quiver) -> LongestPath | CycleDetected:
    N = Q.N
    indeg = [0] * N
    succ: list[list[int]] = [[] for _ in range(N)]
    for a in Q.arrows:
        succ[a.source].append(a.target)
        indeg[a.target] += 1
    heap = [v for v in range(N) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) < N:
        return CycleDetected(_find_cycle(N, succ, set(range(N)) - set(order)))
    best = [0] * N
    prev: list[int | None] = [None] * N
    for v in order:
        for w in succ[v]:
            if best[v] + 1 > best[w]:
                best[w] = best[v] + 1
                prev[w] = v
    if N == 0:
        return LongestPath(0, ())
    end = max(range(N), key=lambda v: (best[v], -v))
    walk = [end]
    while prev[walk[-1]] is not None:
        walk.append(prev[walk[-1]])
    return LongestPath(best[end], tuple(reversed(walk)))


def _find_cycle(N: int, succ, remaining: set) -> tuple:
    # every vertex left after Kahn's algorithm has a predecessor among the
    # remaining ones, so walking backwards must revisit a vertex
    pred: dict[int, int] = {}
    for v in sorted(remaining):
        for w in succ[v]:
            if w in remaining and w not in pred:
                pred[w] = v
    v = min(remaining)
    seen: list[int] = []
    while v not in seen:
        seen.append(v)
        v = pred[v]
    cyc = seen[seen.index(v):]
    cyc.reverse()
    return tuple(cyc) + (cyc[0],)
