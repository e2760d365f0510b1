"""Turning parsed definitions into algebras, families and matrices."""

from __future__ import annotations

import threading
from fractions import Fraction

from ..algebra import FinAlgebra, opposite, semisimple
from ..exactmat import IntMatrix, to_q
from ..families import (SubspaceFamily, _auto_quotient, efamily, green, kk_family, kronecker,
                        r_family, random_family, s_ring)
from ..ktheory import realize_green
from ..quiverpath import Arrow, CycleDetected, Quiver, RelationSet, longest_path, quotient_algebra
from ..twisted import canonical_v, dg_twisted_product, tensor_over_R, twisted_product
from .dsl import Call, DSLError, Document, QuiverDef, RelationsDef

__all__ = ["Workspace"]


def _param(e: Call, key: str, pos: int, default=None, required: bool = True):
    v = e.kw(key)
    if v is None and pos < len(e.args):
        v = e.args[pos]
    if v is None:
        if default is None and required:
            raise DSLError(f"{e.func} needs the parameter {key}", e.line, e.col, "type")
        return default
    return v


def _int(e: Call, key: str, pos: int, default=None) -> int:
    v = _param(e, key, pos, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DSLError(f"parameter {key} of {e.func} must be an integer", e.line, e.col, "type")
    return v


class Workspace:
    """Lazily built objects of a document; safe to share between threads."""

    def __init__(self, doc: Document, seed_override: int | None = None):
        self.doc = doc
        self.seed_override = seed_override
        self._cache: dict[str, object] = {}
        self._lock = threading.RLock()
        self.twists: dict[str, object] = {}     # algebra name -> twisting map

    @property
    def seed(self) -> int | None:
        return self.seed_override if self.seed_override is not None else self.doc.seed

    def kind(self, name: str) -> str:
        return self.doc.lookup(name).kind

    def get(self, name: str):
        with self._lock:
            if name not in self._cache:
                d = self.doc.lookup(name)
                if d is None:
                    raise DSLError(f"unresolved reference {name!r}", kind="reference")
                self._cache[name] = getattr(self, "_build_" + d.kind)(d)
            return self._cache[name]

    def algebra(self, name: str) -> FinAlgebra:
        """The algebra behind a name; a family stands for its algebra R_F."""
        if self.kind(name) == "family":
            key = name + "#R"
            with self._lock:
                if key not in self._cache:
                    self._cache[key] = r_family(self.get(name))
                return self._cache[key]
        return self.get(name)

    # builders
    def _build_quiver(self, d: QuiverDef) -> Quiver:
        return Quiver(d.vertices, [Arrow(lab, s - 1, e - 1, g) for lab, s, e, g in d.arrows])

    def _build_relations(self, d: RelationsDef) -> list[dict]:
        return [{p: to_q(c) for c, p in rel} for rel in d.relations]

    def _build_matrix(self, d) -> IntMatrix:
        return IntMatrix([list(r) for r in d.rows])

    def _build_family(self, d) -> SubspaceFamily:
        e = d.expr
        if e.func == "kk":
            return kk_family(_int(e, "m", 0))
        n, m, k = _int(e, "n", 0), _int(e, "m", 1), _int(e, "k", 2)
        if self.seed_override is not None:
            seed = self.seed_override
        else:
            seed = _param(e, "seed", 3, self.doc.seed if self.doc.seed is not None else 0)
        generic = _param(e, "generic", 4, 1)
        return random_family(n, m, k, int(seed), generic=bool(generic))

    def _build_algebra(self, d) -> FinAlgebra:
        e = d.expr
        f = e.func
        if f in ("rfamily", "kk"):
            return r_family(self._build_family(d))
        if f == "quotient":
            Q = self.get(e.args[0].id)
            if len(e.args) == 1:
                cyc = longest_path(Q)
                if isinstance(cyc, CycleDetected):
                    raise ValueError(f"quiver {e.args[0].id} has an oriented cycle through vertices "
                                     f"{[v + 1 for v in cyc.witness]}; its path algebra is infinite")
                return _auto_quotient(Q, [])
            rdef = self.doc.lookup(e.args[1].id)
            rels = self.get(rdef.name)
            if rdef.trunc is None:
                return _auto_quotient(Q, rels)
            rs = RelationSet(Q, [], rdef.trunc)
            for r in rels:
                rs.add(r)
            return quotient_algebra(Q, rs)
        if f == "green":
            return green(_int(e, "k", 0))
        if f == "kronecker":
            deg = _param(e, "deg", 1, None, required=False)
            n = _int(e, "n", 0)
            if deg is not None and (not isinstance(deg, tuple) or len(deg) != n):
                raise DSLError("deg must be a list with one degree per arrow", e.line, e.col, "type")
            return kronecker(n, list(deg) if deg is not None else None)
        if f == "efamily":
            return efamily(_int(e, "p", 0), _int(e, "q", 1), _int(e, "delta", 2))
        if f == "semisimple":
            return semisimple(_int(e, "N", 0))
        if f == "opposite":
            return opposite(self.algebra(e.args[0].id))
        if f == "realize":
            return realize_green(self.get(e.args[0].id))
        if f == "twist":
            return self._twist(d)
        raise DSLError(f"unknown constructor {f!r}", e.line, e.col, "reference")

    def _twist(self, d) -> FinAlgebra:
        e = d.expr
        A, B = (self.algebra(a.id) for a in e.args)
        if A.N != B.N:
            raise DSLError(f"twist factors have {A.N} and {B.N} idempotents; over=S needs equal counts",
                           e.line, e.col, "type")
        S = semisimple(A.N)
        Ar, Br = s_ring(A, S), s_ring(B, S)
        sp = tensor_over_R(Ar, Br)
        tau = canonical_v(Ar, Br, sp)
        self.twists[d.name] = tau
        if e.nabla is None:
            return twisted_product(tau)
        labels = sp.labels()
        index = {lab: i for i, lab in enumerate(labels)}
        nab = {}
        for lab, terms in e.nabla:
            if lab not in B.labels:
                raise DSLError(f"nabla: {lab!r} is not a basis element of {e.args[1].id}",
                               e.line, e.col, "reference")
            vec = {}
            for c, p in terms:
                if p not in index:
                    raise DSLError(f"nabla: {p!r} is not a basis element of the product", e.line, e.col,
                                   "reference")
                vec[index[p]] = vec.get(index[p], 0) + to_q(Fraction(c))
            nab[B.index(lab)] = vec
        return dg_twisted_product(tau, nab)
