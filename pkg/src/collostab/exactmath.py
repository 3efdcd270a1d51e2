"""Exact rational arithmetic and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` (always stored in lowest terms with a
positive denominator).  :class:`Poly` is an immutable dense polynomial whose
coefficient ``k`` multiplies ``X**k``.  Coefficients are normally fractions,
but any exact field element supporting ``+ - * /`` and ``== 0`` works, which
is how tableaux over ``Q(sqrt(d))`` reuse the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

import mpmath

Scalar = Fraction

ISOLATION_WIDTH = Fraction(1, 2**40)


class ContractError(ValueError):
    """An operation was called outside its documented precondition."""


def as_scalar(x) -> Fraction:
    """Coerce ints, fractions and numeric strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def to_mpf(x):
    """Convert an exact scalar (or anything mpmath understands) to mpmath."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mpmath.mpf(x)
    if hasattr(x, "to_mp"):
        return x.to_mp()
    return mpmath.mpmathify(x)


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a polynomial coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("floats are not exact polynomial coefficients")
    return c


class Poly:
    """Dense univariate polynomial with exact coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # basic queries ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly([other])
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # ring operations ---------------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly([other]) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = _coerce(other)
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly":
        """Divide by a nonzero scalar."""
        if isinstance(c, Poly):
            raise TypeError("use divmod or exact_div for polynomial division")
        c = _coerce(c)
        return Poly([a / c for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), Poly(rem)
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quo[k] = q
            if q == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quo), Poly(rem[: other.degree])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    # calculus and evaluation ------------------------------------------------
    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mp(self, z):
        """Evaluate in mpmath arithmetic (z may be mpf, mpc or complex)."""
        z = mpmath.mpmathify(z)
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * z + to_mpf(c)
        return acc

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    def compose_neg(self) -> "Poly":
        """p(-X)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    # display ---------------------------------------------------------------
    def to_str(self, var: str = "X") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            neg = _is_negative(c)
            mag = -c if neg else c
            if k == 0:
                body = _fmt(mag)
            else:
                pw = var if k == 1 else f"{var}^{k}"
                body = pw if mag == 1 else f"{_fmt(mag)}*{pw}"
            if not terms:
                terms.append(f"-{body}" if neg else body)
            else:
                terms.append(f" - {body}" if neg else f" + {body}")
        return "".join(terms)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly([{', '.join(_fmt(c) for c in self.coeffs)}])"


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


def _fmt(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    s = str(c)
    return f"({s})" if (" " in s) else s


X = Poly.x()


# ---------------------------------------------------------------------------
# transforms used by the stability analysis
# ---------------------------------------------------------------------------

def tau_transform(p: Poly) -> Poly:
    """Multiply the degree-k coefficient by k!."""
    return Poly([factorial(k) * c for k, c in enumerate(p.coeffs)])


def shift(p: Poly, a) -> Poly:
    """Return q with q(X) = p(X + a), by Horner expansion."""
    a = _coerce(a)
    q = Poly()
    step = Poly([a, 1])
    for c in reversed(p.coeffs):
        q = q * step + c
    return q


def reversal(p: Poly, n: int) -> Poly:
    """X**n * p(1/X) for a degree bound n >= deg p."""
    if p.degree > n:
        raise ContractError(f"degree bound {n} below degree {p.degree}")
    cs = list(p.coeffs) + [Fraction(0)] * (n + 1 - len(p.coeffs))
    return Poly(reversed(cs))


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Monic gcd over the coefficient field (Euclid on monic remainders)."""
    if p.is_zero() and q.is_zero():
        raise ContractError("gcd of two zero polynomials")
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def square_free_decomposition(p: Poly) -> list[Poly]:
    """Yun's algorithm: monic factors f_1, f_2, ... with p ~ prod f_i**i."""
    if p.is_zero():
        raise ContractError("square-free decomposition of zero")
    if p.degree == 0:
        return []
    factors = []
    dp = p.derivative()
    a = gcd_poly(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    while True:
        f = gcd_poly(b, d) if not d.is_zero() else b.monic()
        factors.append(f)
        b = b.exact_div(f)
        if b.degree <= 0:
            break
        c = d.exact_div(f)
        d = c - b.derivative()
    return factors


def square_free_part(p: Poly) -> tuple[Poly, Poly]:
    """Split p into (odd_part, even_certificate).

    ``odd_part`` is the monic product of the square-free factors of odd
    multiplicity; ``even_certificate`` is the monic square root of
    ``p / (lc(p) * odd_part)``.  The quotient ``p / odd_part`` is a positive
    multiple of a perfect square iff ``lc(p)`` (over ``lc(odd_part) = 1``) is
    positive.
    """
    if p.is_zero():
        raise ContractError("square_free_part of the zero polynomial")
    odd = Poly([1])
    half = Poly([1])
    for i, f in enumerate(square_free_decomposition(p), start=1):
        if i % 2:
            odd = odd * f
        half = half * f ** (i // 2)
    return odd, half


def radical(p: Poly) -> Poly:
    """Monic square-free part p / gcd(p, p')."""
    if p.is_zero():
        raise ContractError("radical of zero")
    if p.degree <= 0:
        return Poly([1])
    return p.exact_div(gcd_poly(p, p.derivative())).monic()


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

def sturm_sequence(p: Poly) -> list[Poly]:
    if p.is_zero():
        raise ContractError("Sturm sequence of the zero polynomial")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        # positive rescaling keeps signs and tames coefficient growth
        if not r.is_zero():
            r = r / abs(r.lc)
        seq.append(-r)
    seq.pop()
    return seq


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    n = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            n += 1
        prev = s
    return n


def _signs_at(seq: Sequence[Poly], x) -> list[int]:
    if x is None:
        raise ValueError
    if x == "-inf":
        return [_sign(q.lc) * (-1 if q.degree % 2 else 1) for q in seq]
    if x == "+inf":
        return [_sign(q.lc) for q in seq]
    return [_sign(q(x)) for q in seq]


def sturm_real_root_count(p: Poly, lo=None, hi=None, seq=None) -> int:
    """Number of distinct real roots of square-free p in (lo, hi].

    ``None`` stands for -inf (lo) / +inf (hi).
    """
    if p.is_zero():
        raise ContractError("Sturm count of the zero polynomial")
    if p.degree == 0:
        return 0
    seq = seq or sturm_sequence(p)
    a = "-inf" if lo is None else as_scalar(lo)
    b = "+inf" if hi is None else as_scalar(hi)
    return _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))


def cauchy_bound(p: Poly) -> Fraction:
    lc = p.lc
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly, width: Fraction = ISOLATION_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Disjoint half-open intervals (lo, hi], one per distinct real root.

    Each interval is narrower than ``width``.  Intervals are sorted.
    """
    if p.is_zero():
        raise ContractError("root isolation of the zero polynomial")
    q = radical(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    bound = cauchy_bound(q)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, sturm_real_root_count(q, -bound, bound, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_real_root_count(q, lo, mid, seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    return sorted(out)


def refine_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (lo, hi] of square-free p below ``width``."""
    seq = sturm_sequence(p)
    while hi - lo >= width:
        if p(hi) == 0:
            return hi, hi
        mid = (lo + hi) / 2
        plo, pmid = p(lo), p(mid)
        if plo != 0 and pmid != 0:
            inside_left = _sign(plo) != _sign(pmid)
        else:
            inside_left = sturm_real_root_count(p, lo, mid, seq) == 1
        if inside_left:
            hi = mid
        else:
            lo = mid
    return lo, hi


# ---------------------------------------------------------------------------
# rational functions and polynomial matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(Poly(), Poly([1]))
        g = gcd_poly(num, den)
        num = num.exact_div(g)
        den = den.exact_div(g)
        lc = den.lc
        return cls(num / lc, den / lc)

    def is_proper(self) -> bool:
        """Bounded at infinity: deg num <= deg den."""
        return self.num.degree <= self.den.degree

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def to_str(self, var: str = "X") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Polys

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ContractError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        flat = [e if isinstance(e, Poly) else Poly([e]) for row in rows for e in row]
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(flat))

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[Poly]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ContractError("shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = Poly()
                for k in range(self.cols):
                    acc = acc + self[i, k] * other[k, j]
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, tuple(out))

    def minor(self, i: int, j: int) -> "PolyMatrix":
        rows = [r[:j] + r[j + 1:] for k, r in enumerate(self.row_lists()) if k != i]
        return PolyMatrix(self.rows - 1, self.cols - 1, tuple(e for r in rows for e in r))


def _det_cofactor(m: list[list[Poly]]) -> Poly:
    n = len(m)
    if n == 0:
        return Poly([1])
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = Poly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(m: list[list[Poly]]) -> Poly:
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return Poly([1])
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def poly_det(m: Sequence[Sequence[Poly]]) -> Poly:
    rows = [list(r) for r in m]
    if len(rows) <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def polymatrix_det_adj(M: PolyMatrix) -> tuple[Poly, PolyMatrix]:
    """Exact determinant and adjugate, with M @ adj == det * I."""
    if M.rows != M.cols:
        raise ContractError("determinant of a non-square matrix")
    n = M.rows
    rows = M.row_lists()
    det = poly_det(rows)
    if n == 1:
        return det, PolyMatrix(1, 1, (Poly([1]),))
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            c = poly_det(sub)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return det, PolyMatrix(n, n, tuple(e for r in adj for e in r))


def identity_polymatrix(n: int) -> PolyMatrix:
    return PolyMatrix(n, n, tuple(Poly([1]) if i == j else Poly() for i in range(n) for j in range(n)))


# ---------------------------------------------------------------------------
# exact dense linear algebra over a field
# ---------------------------------------------------------------------------

def solve_linear(a: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list]:
    """Solve a @ x = rhs exactly by Gauss-Jordan elimination (rhs is n x m)."""
    n = len(a)
    m = len(rhs[0]) if rhs else 0
    aug = [list(a[i]) + list(rhs[i]) for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k] if not isinstance(aug[k][k], Fraction) else Fraction(1) / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [vi - f * vk for vi, vk in zip(aug[i], aug[k])]
    return [row[n:n + m] for row in aug]


def matrix_rank(a: Sequence[Sequence]) -> int:
    rows = [list(r) for r in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank
