"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Just enough to build Butcher tableaux exactly when the nodes are roots of
rational quadratics (two-stage Gauss points, the sqrt(7) nodes, ...).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = k**2 * d with d square-free; returns (k, d)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        if m % p == 0:
            m //= p
            d *= p
        p += 1
    return k, d * m


class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b and square-free d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _lift(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def _d(self, other) -> int:
        return self.d if self.b != 0 or not isinstance(other, QuadraticNumber) else other.d

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return QuadraticNumber(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadraticNumber(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a**2 with d*b**2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() == 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_mp(self):
        a = mpmath.mpf(self.a.numerator) / self.a.denominator
        b = mpmath.mpf(self.b.numerator) / self.b.denominator
        return a + b * mpmath.sqrt(self.d)

    def __float__(self) -> float:
        return float(self.to_mp())

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})" if self.b in (1, -1) else f"{abs(self.b)}*sqrt({self.d})"
        if self.a == 0:
            return f"-{rad}" if self.b < 0 else rad
        return f"{self.a} {'-' if self.b < 0 else '+'} {rad}"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.a}, {self.b}, {self.d})"


def quadratic_roots(c2: Fraction, c1: Fraction, c0: Fraction):
    """Exact real roots of c2 X^2 + c1 X + c0 in ascending order, or None if complex."""
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    num, den = disc.numerator, disc.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    k, d = squarefree_split(num * den) if disc else (0, 1)
    half = 1 / (2 * c2)
    if d == 1:
        r = Fraction(k, den)
        roots = [(-c1 - r) * half, (-c1 + r) * half]
        return sorted(roots)
    coef = Fraction(k, den) * half
    r1 = QuadraticNumber(-c1 * half, -coef, d)
    r2 = QuadraticNumber(-c1 * half, coef, d)
    return sorted([r1, r2])

