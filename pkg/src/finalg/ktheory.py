"""Euler form matrices of S-split (DG) algebras, their behaviour under
twisted products, and realization of SL(n, Z) matrices by generalized Green
DG algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import FinAlgebra, semisimple
from .exactmat import IntMatrix

__all__ = [
    "KTheoryError", "chi_matrix", "chi_inverse_transpose", "verify_chi_multiplicative",
    "Transvection", "factor_sl", "product_of", "elementary", "realize_green",
    "random_sl", "unsigned_size",
]


class KTheoryError(ValueError):
    pass


def chi_matrix(A: FinAlgebra) -> IntMatrix:
    """X_ij = sum_l (-1)^l dim e_j A^l e_i."""
    pe = A.peirce
    if pe is None:
        raise KTheoryError("algebra is not S-split in a Peirce-homogeneous basis")
    for e in A.idempotents:
        if A.d({e: 1}):
            raise KTheoryError(f"differential does not vanish on {A.labels[e]}")
    X = [[0] * A.N for _ in range(A.N)]
    for x, (l, r) in enumerate(pe):
        X[r][l] += -1 if A.degree(x) % 2 else 1
    return IntMatrix(X, ncols=A.N)


def chi_inverse_transpose(X: IntMatrix) -> IntMatrix:
    """(X^{-1})^t, the Euler form in the basis of simple modules."""
    if abs(X.det()) != 1:
        raise KTheoryError("matrix is not unimodular")
    return IntMatrix(X.inverse().T.tolist(), ncols=X.ncols)


def verify_chi_multiplicative(A: FinAlgebra, B: FinAlgebra, C: FinAlgebra) -> bool:
    """X_C == X_B . X_A for C a (DG) twisted product of A and B over Q^N."""
    return chi_matrix(C) == IntMatrix((chi_matrix(B) @ chi_matrix(A)).tolist(), ncols=A.N)


@dataclass(frozen=True)
class Transvection:
    """E_ij(eps)^count = I + eps * count * E_ij (0-based i != j)."""

    i: int
    j: int
    eps: int
    count: int = 1

    def matrix(self, n: int) -> IntMatrix:
        return elementary(n, self.i, self.j, self.eps * self.count)

    def __str__(self) -> str:
        return f"E{self.i + 1}{self.j + 1}({self.eps * self.count})"


def elementary(n: int, i: int, j: int, c: int) -> IntMatrix:
    rows = [[int(r == s) for s in range(n)] for r in range(n)]
    rows[i][j] += c
    return IntMatrix(rows, ncols=n)


def product_of(word: Sequence[Transvection], n: int) -> IntMatrix:
    M = IntMatrix.identity(n)
    for t in word:
        M = M @ t.matrix(n)
    return IntMatrix(M.tolist(), ncols=n)


def unsigned_size(word: Sequence[Transvection], n: int) -> int:
    """Entry sum of the product of |E_ij(c)|: the dimension of the realizing algebra."""
    M = [[int(r == s) for s in range(n)] for r in range(n)]
    for t in word:
        # right multiplication by I + c E_ij adds c * column i to column j
        for r in range(n):
            M[r][t.j] += t.count * M[r][t.i]
    return sum(map(sum, M))


def factor_sl(M) -> list[Transvection]:
    """Ordered transvections whose product is M (det M must be 1).

    First a greedy column reduction that prefers steps without cancellation
    (these keep the realizing algebra small), then integer row reduction of
    whatever is left: Euclid on each column with the smallest entry as pivot,
    pivots normalised to +1 using the next row, so no word for -I is needed.
    The result is checked by multiplying it back.
    """
    M = M if isinstance(M, IntMatrix) else IntMatrix(M)
    n = M.nrows
    if M.ncols != n:
        raise KTheoryError("matrix is not square")
    if M.det() != 1:
        raise KTheoryError(f"determinant is {M.det()}, not 1")
    rows = [list(map(int, r)) for r in M.tolist()]
    best = None
    # factor M, its transpose, inverse and inverse transpose; keep the word
    # whose realizing algebra is smallest
    for variant in ("id", "T", "inv", "invT"):
        A = _variant(rows, n, variant)
        tail = _greedy_columns(A, n)
        word = _undo_variant(_merge(_row_reduce(A, n) + tail), variant)
        size = unsigned_size(word, n)
        if best is None or size < best[0]:
            best = (size, word)
    word = _merge(best[1])
    if product_of(word, n) != M:
        raise KTheoryError("factorization failed to multiply back")
    return word


def _variant(rows: list, n: int, variant: str) -> list:
    M = IntMatrix(rows, ncols=n)
    if variant in ("inv", "invT"):
        M = M.inverse()
    if variant in ("T", "invT"):
        M = M.T
    return [list(map(int, r)) for r in M.tolist()]


def _undo_variant(word: list, variant: str) -> list:
    if variant in ("T", "invT"):
        word = [Transvection(t.j, t.i, t.eps, t.count) for t in reversed(word)]
    if variant in ("inv", "invT"):
        word = [Transvection(t.i, t.j, -t.eps, t.count) for t in reversed(word)]
    return word


def _perfect_step(A: list, n: int, i: int, j: int) -> int:
    """Largest c with col_j - c col_i shrinking every entry without sign change."""
    sign, cmax = 0, None
    for r in range(n):
        a, b = A[r][i], A[r][j]
        if not a:
            continue
        if not b:
            return 0
        sr = 1 if (a > 0) == (b > 0) else -1
        if sign and sr != sign:
            return 0
        sign = sr
        q = abs(b) // abs(a)
        if not q:
            return 0
        cmax = q if cmax is None else min(cmax, q)
    return sign * cmax if cmax else 0


def _norm(A) -> int:
    return sum(abs(x) for r in A for x in r)


def _greedy_columns(A: list, n: int) -> list[Transvection]:
    """Reduce A by column operations col_j -= c col_i, preferring steps that
    cause no cancellation, and otherwise any step that lowers the entry sum.
    Returns T_1..T_k with (reduced A) T_1 ... T_k = original A."""
    ops = []
    while True:
        best = None
        for i in range(n):
            wi = sum(abs(A[r][i]) for r in range(n))
            for j in range(n):
                if i != j and wi:
                    c = _perfect_step(A, n, i, j)
                    if c and (best is None or abs(c) * wi > best[0]):
                        best = (abs(c) * wi, i, j, c)
        if best is None:
            base = _norm(A)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    cands = set()
                    for r in range(n):
                        if A[r][i]:
                            q = A[r][j] // A[r][i]
                            cands.update((q, q + 1))
                    for c in cands - {0}:
                        new = base - sum(abs(A[r][j]) - abs(A[r][j] - c * A[r][i]) for r in range(n))
                        if new < base and (best is None or new < best[0]):
                            best = (new, i, j, c)
        if best is None:
            break
        _, i, j, c = best
        for r in range(n):
            A[r][j] -= c * A[r][i]
        ops.append(Transvection(i, j, 1 if c > 0 else -1, abs(c)))
    return ops[::-1]


def _row_reduce(A: list, n: int) -> list[Transvection]:
    ops: list[tuple[int, int, int]] = []   # (i, j, c): row_i += c * row_j

    def op(i, j, c):
        if c:
            for s in range(n):
                A[i][s] += c * A[j][s]
            ops.append((i, j, c))

    for col in range(n):
        rows = range(col, n)
        while True:
            nz = [r for r in rows if A[r][col]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: (abs(A[r][col]), r))
            for r in nz:
                if r != p:
                    op(r, p, -_round_div(A[r][col], A[p][col]))
        nz = [r for r in rows if A[r][col]]
        p = nz[0]
        if p != col:
            op(col, p, 1)
            op(p, col, -A[p][col] // A[col][col])
        if A[col][col] == -1 and col < n - 1:
            nxt = col + 1
            op(nxt, col, -1)
            op(col, nxt, 2)
            op(nxt, col, -1)
        if abs(A[col][col]) != 1:
            raise KTheoryError("row reduction did not reach a unit pivot")
        for r in range(n):
            if r != col and A[r][col]:
                op(r, col, -A[r][col] * A[col][col])
    # ops_k ... ops_1 A = I, so A = ops_1^{-1} ... ops_k^{-1}
    return [Transvection(i, j, 1 if c < 0 else -1, abs(c)) for i, j, c in ops]


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _merge(word: list[Transvection]) -> list[Transvection]:
    out: list[Transvection] = []
    for t in word:
        if out and (out[-1].i, out[-1].j) == (t.i, t.j):
            c = out[-1].eps * out[-1].count + t.eps * t.count
            out.pop()
            if c:
                out.append(Transvection(t.i, t.j, 1 if c > 0 else -1, abs(c)))
        else:
            out.append(t)
    return out


def realize_green(M, check: bool = True, hexagon: bool = False, single_arrows: bool = False) -> FinAlgebra:
    """Generalized Green DG algebra with Euler matrix M.

    A transvection E_ij(eps)^count becomes K_ij with ``count`` parallel arrows
    of degree 0 (eps = 1) or 1 (eps = -1), which is itself the twisted product
    of ``count`` copies of K_ij[d]; ``single_arrows`` builds it that way.
    """
    from .families import generalized_green, kronecker_ij_multi

    M = M if isinstance(M, IntMatrix) else IntMatrix(M)
    n = M.nrows
    word = factor_sl(M)
    if not word:
        return semisimple(n)
    factors = []
    serial = 0
    # X of F_1 (x) ... (x) F_r is X_{F_r} ... X_{F_1}, so the word is reversed
    for t in reversed(word):
        d = 0 if t.eps > 0 else 1
        counts = [1] * t.count if single_arrows else [t.count]
        for c in counts:
            serial += 1
            factors.append(kronecker_ij_multi(n, t.i + 1, t.j + 1, d, c, prefix=f"a{serial}"))
    C = generalized_green(factors, check=check, hexagon=hexagon)
    C.meta["word"] = [str(t) for t in word]
    return C


def random_sl(n: int, rng: random.Random, max_entry: int = 50, length: int | None = None) -> IntMatrix:
    """Random product of transvections with every entry at most max_entry in size."""
    while True:
        L = length or rng.randint(2, 3 * n)
        M = IntMatrix.identity(n)
        for _ in range(L):
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-1, 1]) * rng.randint(1, 4)
            M = M @ elementary(n, i, j, c)
        M = IntMatrix(M.tolist(), ncols=n)
        if max(abs(x) for r in M.tolist() for x in r) <= max_entry and M != IntMatrix.identity(n):
            return M
