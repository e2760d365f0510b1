"""Integral binary quadratic forms: Gauss reduction of indefinite forms,
cycles of reduced forms, equivalence, and representability of 1.

All comparisons with sqrt(D) are done by squaring integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import IntMatrix, isqrt

__all__ = [
    "QuadFormError", "BQF", "discriminant", "is_square", "is_reduced", "right_neighbor",
    "reduce", "cycle", "principal_form", "equivalent", "represents_one",
    "brute_force_represents", "representation_of_one", "psd_normal_form", "euler_quadform", "euler_quadform_family",
    "family_F", "family_q_prime", "exceptional_object_verdict", "ExceptionalVerdict",
]


class QuadFormError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BQF:
    """a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def substitute(self, S) -> "BQF":
        """f(S (x, y)) for an integer 2x2 matrix S given as rows."""
        (p, q), (r, s) = S
        a, b, c = self.a, self.b, self.c
        return BQF(self(p, r), 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s, self(q, s))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c}) [D={self.D}]"


def discriminant(f: BQF) -> int:
    return f.D


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _lt_sqrt(x: int, D: int) -> bool:
    """x < sqrt(D)."""
    return x < 0 or x * x < D


def _gt_sqrt(x: int, D: int) -> bool:
    """x > sqrt(D)."""
    return x > 0 and x * x > D


def _indefinite(f: BQF):
    D = f.D
    if D <= 0:
        raise QuadFormError(f"form {f} is not indefinite")
    if is_square(D):
        raise QuadFormError(f"discriminant {D} is a perfect square; not supported")
    return D


def is_reduced(f: BQF) -> bool:
    """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
    D = _indefinite(f)
    a2 = 2 * abs(f.a)
    return f.b > 0 and _lt_sqrt(f.b, D) and _gt_sqrt(a2 + f.b, D) and _lt_sqrt(a2 - f.b, D)


def _rho(f: BQF) -> tuple[BQF, int]:
    """(c, b', *) with b' = -b + 2ct chosen in the reduction window; returns t."""
    D = f.D
    c = f.c
    if c == 0:
        raise QuadFormError("form has c = 0 (square discriminant)")
    m = 2 * abs(c)
    if c * c > D:
        lo = -abs(c) + 1            # -|c| < b' <= |c|
    else:
        lo = isqrt(D) - m + 1       # sqrt(D) - 2|c| < b' < sqrt(D)
    bp = (-f.b - lo) % m + lo
    t = (bp + f.b) // (2 * c)
    return BQF(c, bp, (bp * bp - D) // (4 * c)), t


def right_neighbor(f: BQF) -> BQF:
    """The reduced form (c, b', c') with b + b' = 0 mod 2c."""
    if not is_reduced(f):
        raise QuadFormError(f"{f} is not reduced")
    g, _ = _rho(f)
    if not is_reduced(g):
        raise QuadFormError(f"neighbor {g} of {f} is not reduced")
    return g


def reduce(f: BQF) -> tuple[BQF, list]:
    """Reduced form properly equivalent to f and S in SL(2, Z) with f(S v) = g(v)."""
    _indefinite(f)
    S = [[1, 0], [0, 1]]
    g = f
    for _ in range(10_000):
        if is_reduced(g):
            return g, S
        g, t = _rho(g)
        # g = previous o [[0, -1], [1, t]]
        S = [[S[0][1], -S[0][0] + t * S[0][1]], [S[1][1], -S[1][0] + t * S[1][1]]]
    raise QuadFormError("reduction did not terminate")


def cycle(f: BQF) -> list[BQF]:
    g, _ = reduce(f)
    out = [g]
    h = right_neighbor(g)
    while h != g:
        out.append(h)
        h = right_neighbor(h)
        if len(out) > 100_000:
            raise QuadFormError("cycle too long")
    return out


def principal_form(D: int) -> BQF:
    """The reduced form (1, b, c) of discriminant D with b < sqrt(D) largest."""
    if D <= 0 or is_square(D) or D % 4 not in (0, 1):
        raise QuadFormError(f"no indefinite non-square principal form for D={D}")
    r = isqrt(D)
    b = r if (r - D) % 2 == 0 else r - 1
    f = BQF(1, b, (b * b - D) // 4)
    return f if is_reduced(f) else reduce(f)[0]


def psd_normal_form(f: BQF) -> tuple[BQF, list]:
    """For D = 0: (s, 0, 0) and S in SL(2, Z) with f(S v) = s x^2."""
    if f.D != 0:
        raise QuadFormError("form is not degenerate")
    a, b, c = f.a, f.b, f.c
    if a == 0 and c == 0:
        return BQF(0, 0, 0), [[1, 0], [0, 1]]
    if a == 0:
        S = [[0, -1], [1, 0]]
        return f.substitute(S), S
    # f = (2a x + b y)^2 / 4a; new coordinate u x + v y with (u, v) primitive
    from math import gcd
    g = gcd(2 * a, b)
    u, v = 2 * a // g, b // g
    p, q = _ext_complement(u, v)           # u q - v p = 1
    S = [[q, -v], [-p, u]]                  # inverse of [[u, v], [p, q]]
    h = f.substitute(S)
    if h.b != 0 or h.c != 0:
        raise QuadFormError("degenerate normal form failed")
    return h, S


def _ext_complement(u: int, v: int) -> tuple[int, int]:
    def egcd(x, y):
        if y == 0:
            return x, 1, 0
        g, s, t = egcd(y, x % y)
        return g, t, s - (x // y) * t
    g, s, t = egcd(u, v)          # s u + t v = g = +-1
    if g < 0:
        s, t = -s, -t
    return -t, s                  # u * s - v * (-t) = 1


def equivalent(f: BQF, g: BQF) -> bool:
    """Proper equivalence of indefinite non-square forms: same cycle after reduction."""
    if f.D != g.D:
        return False
    if f.D == 0:
        return psd_normal_form(f)[0] == psd_normal_form(g)[0]
    return reduce(g)[0] in set(cycle(f))


def represents_one(f: BQF) -> bool:
    D = f.D
    if D == 0:
        return psd_normal_form(f)[0].a == 1
    if D < 0:
        return _definite_represents_one(f)
    return reduce(f)[0] in set(cycle(principal_form(D)))


def representation_of_one(f: BQF):
    """(x, y) with f(x, y) = 1 found by walking the cycle of f to a form
    (1, b, c); None when f does not represent 1.  Indefinite non-square D."""
    g, S = reduce(f)
    start = g
    while True:
        if g.a == 1:
            return (S[0][0], S[1][0])
        g, t = _rho(g)
        S = [[S[0][1], -S[0][0] + t * S[0][1]], [S[1][1], -S[1][0] + t * S[1][1]]]
        if g == start:
            return None


def _definite_represents_one(f: BQF) -> bool:
    a, b, c = f.a, f.b, f.c
    if a < 0:
        return False
    while True:
        if c < a:
            a, b, c = c, -b, a
        elif abs(b) > a:
            t = (a - b) // (2 * a)
            b, c = b + 2 * a * t, a * t * t + b * t + c
        else:
            break
    return a == 1


def brute_force_represents(f: BQF, bound: int = 200, target: int = 1):
    """First (x, y) with |x|, |y| <= bound and f(x, y) = target, or None."""
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if f(x, y) == target:
                return (x, y)
    return None


# --------------------------------------------------------------------------
# Euler forms

def euler_quadform(A) -> BQF:
    """chi(E, E) for E = x[P_1] + y[P_2]."""
    from .ktheory import chi_matrix
    X = chi_matrix(A).tolist() if not isinstance(A, IntMatrix) else A.tolist()
    if len(X) != 2:
        raise QuadFormError("Euler quadratic form needs exactly two simple modules")
    return BQF(X[0][0], X[0][1] + X[1][0], X[1][1])


def euler_quadform_family(n: int, m: int, k: int) -> BQF:
    return BQF(m * (n - k) + 1, m * k * (n - k) + m + n, m * k + 1)


def family_F(n: int, m: int, k: int) -> int:
    return m * k * (n - k) + n - m


def family_q_prime(n: int, m: int, k: int) -> BQF:
    F = family_F(n, m, k)
    return BQF(m * k + 1, F - 2 * k, -(k * (n - k) - 1))


@dataclass
class ExceptionalVerdict:
    possible: bool          # whether the Euler form represents 1 at all
    form: BQF
    reason: str
    witness: tuple | None = None


def exceptional_object_verdict(A) -> ExceptionalVerdict:
    """An exceptional object E has chi(E, E) = 1, so none can exist when the
    Euler form does not represent 1."""
    f = euler_quadform(A)
    for v in ((1, 0), (0, 1)):
        if f(*v) == 1:
            return ExceptionalVerdict(True, f, "the form takes the value 1 on a projective", v)
    D = f.D
    if D > 0 and is_square(D):
        w = brute_force_represents(f, 200)
        return ExceptionalVerdict(w is not None, f, "square discriminant: brute-force search only", w)
    ok = represents_one(f)
    if D > 0:
        w = representation_of_one(f)
        if (w is not None) != ok or (w is not None and f(*w) != 1):
            raise QuadFormError("cycle walk disagrees with the principal cycle test")
        return ExceptionalVerdict(ok, f, "principal cycle contains the reduced form" if ok
                                  else "reduced form lies outside the principal cycle", w)
    if D == 0:
        s = psd_normal_form(f)[0]
        return ExceptionalVerdict(ok, f, f"degenerate form equivalent to {s.a}x^2")
    return ExceptionalVerdict(ok, f, "definite form reduced")
