"""Closed rational intervals with outward-exact arithmetic.

Endpoints are exact rationals, so interval arithmetic here is exact (no
rounding step); an Interval is a certificate that the represented real lies
between lo and hi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self):
        """-1, 0, +1 when definite; None when the interval straddles zero.

        0 is returned only for the degenerate point interval [0, 0].
        """
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval division by an interval containing zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n: int):
        if n == 0:
            return Interval.point(1)
        if n < 0:
            return 1 / self ** (-n)
        result = self
        for _ in range(n - 1):
            result = result * self
        if n % 2 == 0 and self.lo < 0 < self.hi:
            result = Interval(Fraction(0), result.hi)
        return result

    def root(self, n: int, width=Fraction(1, 10**40)) -> "Interval":
        """Certified n-th root enclosure of a positive interval."""
        if self.lo <= 0:
            raise ValueError("root() needs an interval bounded away from zero")
        return Interval(_root_below(self.lo, n, width), _root_above(self.hi, n, width))

    def pow_rational(self, e: Fraction, width=Fraction(1, 10**40)) -> "Interval":
        """Certified enclosure of iv**(p/q) for positive iv."""
        e = Fraction(e)
        base = self ** abs(e.numerator)
        out = base.root(e.denominator, width) if e.denominator > 1 else base
        if e < 0:
            out = 1 / out
        return out

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(Fraction(x))


def _root_below(x: Fraction, n: int, width: Fraction) -> Fraction:
    """Largest convenient rational r with r^n <= x (within `width` of the root)."""
    lo, hi = _root_bracket(x, n)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return lo


def _root_above(x: Fraction, n: int, width: Fraction) -> Fraction:
    lo, hi = _root_bracket(x, n)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**n >= x:
            hi = mid
        else:
            lo = mid
    return hi


def _root_bracket(x: Fraction, n: int) -> tuple[Fraction, Fraction]:
    if x <= 0:
        raise ValueError("positive argument required")
    if x >= 1:
        return Fraction(0), x if x > 1 else Fraction(1)
    return x, Fraction(1)


def sqrt_enclosure(x, width=Fraction(1, 10**40)) -> Interval:
    """Certified rational enclosure of sqrt(x) for rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Interval.point(0)
    return Interval(_root_below(x, 2, width), _root_above(x, 2, width))
