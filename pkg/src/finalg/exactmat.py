"""Exact rational linear algebra.

Two layers live here.  ``RatMatrix``/``IntMatrix`` are small immutable dense
matrices used at API boundaries (subspace bases, Euler matrices).  The sparse
helpers (``Echelon``, ``kernel_of_images`` and the ``v*`` vector functions)
work on ``dict[int, mpq]`` vectors and carry the heavy lifting for algebra
structure constants, ideal spans and module syzygies.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import gmpy2
from gmpy2 import mpq, mpz

Q = mpq
Vec = dict  # sparse vector: index -> mpq, no zero values stored

__all__ = [
    "Q", "to_q", "RatMatrix", "IntMatrix", "rref", "kernel_basis",
    "subspace_intersection", "column_space", "same_column_span",
    "Echelon", "kernel_of_images", "vadd", "vaxpy", "vscale", "vsub",
    "vclean", "format_q",
]


def to_q(x) -> mpq:
    """Coerce ints, Fractions, strings like ``"3/4"`` and mpq values."""
    if isinstance(x, type(mpq(0))):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            p, q = x.split("/")
            return mpq(int(p), int(q))
        return mpq(int(x))
    return mpq(x)


def format_q(x) -> str:
    x = to_q(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


# --------------------------------------------------------------------------
# sparse vectors

def vclean(v: Vec) -> Vec:
    return {k: c for k, c in v.items() if c}


def vaxpy(acc: Vec, a, v: Vec) -> Vec:
    """acc += a*v in place; returns acc."""
    if not a:
        return acc
    for k, c in v.items():
        s = acc.get(k, 0) + a * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vadd(u: Vec, v: Vec) -> Vec:
    return vaxpy(dict(u), 1, v)


def vsub(u: Vec, v: Vec) -> Vec:
    return vaxpy(dict(u), -1, v)


def vscale(a, v: Vec) -> Vec:
    if not a:
        return {}
    return {k: a * c for k, c in v.items()}


class Echelon:
    """Incremental sparse row echelon form over Q.

    Each stored row is normalised so its smallest column (the pivot) has
    coefficient 1.  ``reduce`` eliminates every pivot column from a vector,
    which gives a canonical normal form modulo the span.  When ``track`` is
    set every row also remembers the combination of inserted vectors that
    produced it.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, Vec] = {}
        self.combos: dict[int, Vec] = {}
        self.track = track
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: Vec, combo: Vec | None = None) -> tuple[Vec, Vec | None]:
        v = dict(v)
        heap = [k for k in v if k in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            c = v.get(col)
            if not c:
                continue
            row = self.rows[col]
            for k, rc in row.items():
                s = v.get(k, 0) - c * rc
                if s:
                    v[k] = s
                    if k in self.rows and k not in seen:
                        heapq.heappush(heap, k)
                else:
                    v.pop(k, None)
            if combo is not None:
                vaxpy(combo, -c, self.combos[col])
        return v, combo

    def normal_form(self, v: Vec) -> Vec:
        return self.reduce(v)[0]

    def contains(self, v: Vec) -> bool:
        return not self.normal_form(v)

    def add(self, v: Vec) -> int | None:
        """Insert v; returns the new pivot column or None if v was dependent."""
        combo = {self._count: mpq(1)} if self.track else None
        self._count += 1
        r, combo = self.reduce(v, combo)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {k: c * inv for k, c in r.items()}
        if self.track:
            self.combos[p] = {k: c * inv for k, c in combo.items()}
        return p

    def add_many(self, vs: Iterable[Vec]) -> "Echelon":
        for v in vs:
            self.add(v)
        return self

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def reduced_basis(self) -> list[Vec]:
        """Rows of the reduced echelon form (pivot columns cleared everywhere)."""
        return [self._fully_reduced(p) for p in sorted(self.rows)]

    def _fully_reduced(self, p: int) -> Vec:
        rest = {k: c for k, c in self.rows[p].items() if k != p}
        rest = self.normal_form(rest)
        rest[p] = mpq(1)
        return rest

    def coordinates(self, v: Vec) -> Vec | None:
        """Express v in the inserted vectors (requires ``track``); None if v is outside the span."""
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        r, combo = self.reduce(v, {})
        if r:
            return None
        return {k: -c for k, c in combo.items() if c}


def kernel_of_images(images: Sequence[Vec]) -> list[Vec]:
    """Basis of {x : sum_j x_j images[j] = 0}, as sparse vectors over j."""
    ech = Echelon(track=True)
    kernel = []
    for j, w in enumerate(images):
        r, combo = ech.reduce(w, {j: mpq(1)})
        if r:
            p = min(r)
            inv = 1 / r[p]
            ech.rows[p] = {k: c * inv for k, c in r.items()}
            ech.combos[p] = {k: c * inv for k, c in combo.items()}
        else:
            kernel.append(vclean(combo))
    return kernel


# --------------------------------------------------------------------------
# dense matrices

class RatMatrix:
    """Immutable dense matrix of mpq entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, entries, ncols: int | None = None):
        rows = tuple(tuple(to_q(x) for x in row) for row in entries)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, key, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def zeros(cls, n: int, m: int):
        return cls([[0] * m for _ in range(n)], ncols=m)

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int):
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def from_sparse_columns(cls, cols: Sequence[Vec], nrows: int):
        return cls([[c.get(i, 0) for c in cols] for i in range(nrows)], ncols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            try:
                other = type(self)(other)
            except Exception:
                return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_q(x) for x in r) + "]" for r in self.rows)
        return f"{type(self).__name__}([{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def sparse_columns(self) -> list[Vec]:
        return [{i: r[j] for i, r in enumerate(self.rows) if r[j]} for j in range(self.ncols)]

    @property
    def T(self):
        return type(self)([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                          ncols=self.nrows)

    def __matmul__(self, other):
        if not isinstance(other, RatMatrix):
            other = RatMatrix(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        out = [[sum((a * b for a, b in zip(r, c) if a and b), mpq(0)) for c in cols] for r in self.rows]
        cls = IntMatrix if isinstance(self, IntMatrix) and isinstance(other, IntMatrix) else RatMatrix
        return cls(out, ncols=other.ncols)

    def __add__(self, other):
        return type(self)([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other):
        return type(self)([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return RatMatrix([r + s for r, s in zip(self.rows, other.rows)], ncols=self.ncols + other.ncols)

    def rank(self) -> int:
        return rref(self)[2]

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = mpq(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return mpq(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] * inv
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return det

    def inverse(self) -> "RatMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        red, piv, rk = rref(self.hstack(RatMatrix.identity(n)))
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RatMatrix([r[n:] for r in red.rows], ncols=n)


class IntMatrix(RatMatrix):
    """Dense matrix with integer entries (kept as mpq with denominator 1)."""

    def __init__(self, entries, ncols: int | None = None):
        super().__init__(entries, ncols)
        if any(x.denominator != 1 for r in self.rows for x in r):
            raise ValueError("IntMatrix entries must be integers")

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"

    def det(self) -> int:
        return int(super().det())

    def inverse(self) -> "IntMatrix":
        if abs(self.det()) != 1:
            raise ValueError("matrix is not unimodular")
        return IntMatrix(super().inverse().rows)


def rref(M: RatMatrix) -> tuple[RatMatrix, list[int], int]:
    m = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return RatMatrix(m, ncols=nc), pivots, len(pivots)


def kernel_basis(M: RatMatrix) -> RatMatrix:
    """Columns span ker(M); one column per free variable of the RREF."""
    red, pivots, rank = rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [mpq(0)] * M.ncols
        v[f] = mpq(1)
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        cols.append(v)
    return RatMatrix.from_columns(cols, M.ncols)


def column_space(U: RatMatrix) -> RatMatrix:
    """Canonical basis of the column span: rows of RREF(U^T), as columns."""
    red, piv, rank = rref(U.T)
    return RatMatrix.from_columns(red.rows[:rank], U.nrows)


def same_column_span(U: RatMatrix, W: RatMatrix) -> bool:
    return column_space(U) == column_space(W)


def subspace_intersection(U: RatMatrix, W: RatMatrix) -> RatMatrix:
    if U.nrows != W.nrows:
        raise ValueError(f"ambient dimension mismatch: {U.nrows} vs {W.nrows}")
    Ub, Wb = column_space(U), column_space(W)
    K = kernel_basis(Ub.hstack(-Wb))
    a = Ub.ncols
    cols = []
    for coeffs in K.columns():
        x = [sum((Ub.rows[i][j] * coeffs[j] for j in range(a)), mpq(0)) for i in range(U.nrows)]
        cols.append(x)
    if not cols:
        return RatMatrix.zeros(U.nrows, 0)
    return column_space(RatMatrix.from_columns(cols, U.nrows))


def isqrt(n: int) -> int:
    return int(gmpy2.isqrt(mpz(n)))
