"""Exact linear algebra over the rationals and real quadratic fields.

Everything here works in Fraction arithmetic (or pairs of Fractions
p + q*sqrt(d)), so results are certificates rather than approximations:
characteristic polynomials via Faddeev-LeVerrier, kernels via fraction
row echelon scaled back to primitive integer vectors, and spectra split
into rational roots plus integer quadratic factors x^2 - s*x + p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import BadInput

__all__ = [
    "QuadExt",
    "char_poly",
    "eval_poly",
    "is_char_root",
    "rational_roots",
    "quadratic_factors",
    "split_spectrum",
    "rational_kernel",
    "quad_kernel",
    "rank_over_field",
]


@dataclass(frozen=True)
class QuadExt:
    """The real quadratic integer (a + b*sqrt(d)) / 2 with d > 1 square
    free; serializes as the triple (a, b, d)."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.d <= 1:
            raise BadInput("discriminant must exceed 1")
        r = math.isqrt(self.d)
        if r * r == self.d:
            raise BadInput("discriminant must not be a perfect square")

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def as_pair(self):
        """(p, q) with value p + q*sqrt(d), as Fractions."""
        return Fraction(self.a, 2), Fraction(self.b, 2)

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / 2.0

    def to_json(self):
        return [self.a, self.b, self.d]


def _as_fraction_rows(A):
    return [[Fraction(x) for x in row] for row in A]


def char_poly(A) -> list:
    """Monic characteristic polynomial det(xI - A), coefficients from
    the constant term up, computed by the Faddeev-LeVerrier recursion in
    exact arithmetic."""
    M = _as_fraction_rows(A)
    n = len(M)
    if any(len(row) != n for row in M):
        raise BadInput("matrix must be square")
    coeffs = [Fraction(1)] * (n + 1)  # placeholder; filled below
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        B[i][i] = Fraction(1)
    c = [Fraction(1)]
    N = B
    for k in range(1, n + 1):
        # N <- A @ N
        N = [[sum(M[i][l] * N[l][j] for l in range(n)) for j in range(n)]
             for i in range(n)]
        tr = sum(N[i][i] for i in range(n))
        ck = -tr / k
        c.append(ck)
        for i in range(n):
            N[i][i] += ck
    # c[k] is the coefficient of x^{n-k}
    coeffs = list(reversed(c))
    return coeffs


def eval_poly(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _deflate(coeffs, root: Fraction) -> list:
    """Divide by (x - root) by synthetic division; root must be exact."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    out[n - 1] = coeffs[n]
    for k in range(n - 1, 0, -1):
        out[k - 1] = coeffs[k] + root * out[k]
    return out


def rational_roots(coeffs) -> list:
    """All rational roots with multiplicity, plus the deflated cofactor.
    Returns (roots, remainder_coeffs)."""
    work = [Fraction(c) for c in coeffs]
    if work[-1] != 1:
        raise BadInput("polynomial must be monic")
    roots = []
    while len(work) > 1:
        const = work[0]
        if const == 0:
            roots.append(Fraction(0))
            work = work[1:]
            continue
        num = abs(const.numerator)
        den = const.denominator
        if den != 1:
            # monic with integer matrix input keeps integer coefficients
            candidates = []
        else:
            divisors = [d for d in range(1, num + 1) if num % d == 0]
            candidates = []
            for d in divisors:
                candidates.extend([Fraction(d), Fraction(-d)])
        hit = None
        for cand in candidates:
            if eval_poly(work, cand) == 0:
                hit = cand
                break
        if hit is None:
            break
        roots.append(hit)
        work = _deflate(work, hit)
    return roots, work


def quadratic_factors(coeffs) -> list:
    """Factor a monic integer polynomial with all roots in [-3, 3] into
    x^2 - s*x + p pieces.  Returns (factors, leftover) where each factor
    is the integer pair (s, p); leftover is what resisted (degree 0 when
    fully factored)."""
    work = [Fraction(c) for c in coeffs]
    factors = []
    progressed = True
    while len(work) > 3 and progressed:
        progressed = False
        for s in range(-6, 7):
            for p in range(-9, 10):
                # synthetic division by x^2 - s x + p
                q, r1, r0 = _divide_quadratic(work, s, p)
                if r1 == 0 and r0 == 0:
                    factors.append((s, p))
                    work = q
                    progressed = True
                    break
            if progressed:
                break
    if len(work) == 3:
        s = -work[1]
        p = work[0]
        if s.denominator == 1 and p.denominator == 1:
            factors.append((int(s), int(p)))
            work = [Fraction(1)]
    return factors, work


def _divide_quadratic(coeffs, s: int, p: int):
    """coeffs = q * (x^2 - s x + p) + r1 x + r0 (exact)."""
    n = len(coeffs) - 1
    if n < 2:
        return [], coeffs[1] if n >= 1 else Fraction(0), coeffs[0]
    q = [Fraction(0)] * (n - 1)
    rem = list(coeffs)
    for k in range(n - 2, -1, -1):
        q[k] = rem[k + 2]
        rem[k + 1] += s * q[k]
        rem[k] -= p * q[k]
    return q, rem[1], rem[0]


def split_spectrum(A):
    """Exact spectrum of an integer symmetric matrix as rational values
    and QuadExt values with multiplicities.  Returns a list of
    (value, multiplicity) with value a Fraction or QuadExt, sorted by
    float value; raises BadInput if any factor needs degree > 2."""
    coeffs = char_poly(A)
    roots, rest = rational_roots(coeffs)
    factors, leftover = quadratic_factors(rest)
    if len(leftover) > 1:
        raise BadInput("spectrum needs algebraic numbers of degree > 2")
    values = []
    for r in roots:
        values.append(r)
    for s, p in factors:
        disc = s * s - 4 * p
        if disc <= 0:
            raise BadInput("non-real quadratic factor; matrix not symmetric?")
        r = math.isqrt(disc)
        if r * r == disc:
            values.append(Fraction(s + r, 2))
            values.append(Fraction(s - r, 2))
        else:
            d = _squarefree(disc)
            scale = math.isqrt(disc // d)
            values.append(QuadExt(s, scale, d))
            values.append(QuadExt(s, -scale, d))
    counted = {}
    for v in values:
        counted[v] = counted.get(v, 0) + 1
    return sorted(counted.items(), key=lambda kv: float(kv[0]))


def is_char_root(A, value) -> bool:
    """Whether value (Fraction-like or QuadExt) is an exact eigenvalue
    of the integer matrix A, by evaluating det(xI - A) at it."""
    coeffs = char_poly(A)
    if isinstance(value, QuadExt):
        F = _QF(value.d)
        x = value.as_pair()
        acc = (coeffs[-1], Fraction(0))
        for c in reversed(coeffs[:-1]):
            acc = F.add(F.mul(acc, x), (c, Fraction(0)))
        return F.is_zero(acc)
    return eval_poly(coeffs, Fraction(value)) == 0


def _squarefree(m: int) -> int:
    out = 1
    k = 2
    while k * k <= m:
        e = 0
        while m % k == 0:
            m //= k
            e += 1
        if e % 2:
            out *= k
        k += 1
    return out * m


class _QF:
    """Arithmetic in Q(sqrt(d)) on (p, q) Fraction pairs."""

    def __init__(self, d: int):
        self.d = d

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def mul(self, x, y):
        return (x[0] * y[0] + self.d * x[1] * y[1],
                x[0] * y[1] + x[1] * y[0])

    def div(self, x, y):
        nrm = y[0] * y[0] - self.d * y[1] * y[1]
        if nrm == 0:
            raise ZeroDivisionError
        inv = (y[0] / nrm, -y[1] / nrm)
        return self.mul(x, inv)

    @staticmethod
    def is_zero(x):
        return x[0] == 0 and x[1] == 0


def _echelon(rows, field=None):
    """Row echelon in place over Fractions (field None) or a _QF field.
    Returns (rank, pivot_columns)."""
    if not rows:
        return 0, []
    m, n = len(rows), len(rows[0])
    if field is None:
        is_zero = lambda x: x == 0
        div = lambda x, y: x / y
        mul = lambda x, y: x * y
        sub = lambda x, y: x - y
    else:
        is_zero = field.is_zero
        div = field.div
        mul = field.mul
        sub = field.sub
    rank = 0
    pivots = []
    for col in range(n):
        pivot = next((r for r in range(rank, m)
                      if not is_zero(rows[r][col])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [div(x, pv) for x in rows[rank]]
        for r in range(m):
            if r != rank and not is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [sub(x, mul(f, y))
                           for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return rank, pivots


def rank_over_field(A, d: int | None = None) -> int:
    if d is None:
        rows = _as_fraction_rows(A)
        rank, _ = _echelon(rows)
    else:
        rows = [[x if isinstance(x, tuple) else (Fraction(x), Fraction(0))
                 for x in row] for row in A]
        rank, _ = _echelon(rows, _QF(d))
    return rank


def _primitive(vec) -> tuple:
    """Scale a rational vector to coprime integers with positive lead."""
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def rational_kernel(A) -> list:
    """Kernel basis of a rational matrix as primitive integer vectors."""
    rows = _as_fraction_rows(A)
    if not rows:
        return []
    n = len(rows[0])
    rank, pivots = _echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(_primitive(v))
    return basis


def quad_kernel(A, lam: QuadExt) -> list:
    """Kernel basis of (A - lam I) over Q(sqrt(d)), vectors scaled so
    all entries are (integer, integer) pairs meaning p + q*sqrt(d)."""
    d = lam.d
    F = _QF(d)
    lp, lq = lam.as_pair()
    n = len(A)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = (Fraction(A[i][j]), Fraction(0))
            if i == j:
                val = F.sub(val, (lp, lq))
            row.append(val)
        rows.append(row)
    rank, pivots = _echelon(rows, F)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [(Fraction(0), Fraction(0))] * n
        v[fc] = (Fraction(1), Fraction(0))
        for r, pc in enumerate(pivots):
            v[pc] = F.sub((Fraction(0), Fraction(0)), rows[r][fc])
        den = 1
        for p, q in v:
            for x in (p, q):
                den = den * x.denominator // math.gcd(den, x.denominator)
        basis.append(tuple((int(p * den), int(q * den)) for p, q in v))
    return basis
