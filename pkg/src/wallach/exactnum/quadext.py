"""Exact arithmetic in a real quadratic extension Q(sqrt(d)).

A value is a + b*sqrt(d) with rational a, b and a fixed positive squarefree
integer radicand d > 1. Construction accepts any positive rational radicand
and pulls square factors into the coefficient, so equal real numbers always
normalize to the same (a, b, d) triple and equality is decidable exactly.
Mixed-radicand arithmetic is deliberately unsupported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import IncompatibleRadicands
from .interval import Interval, sqrt_enclosure
from .rational import squarefree_split


@dataclass(frozen=True)
class QuadExt:
    a: Fraction
    b: Fraction
    d: int  # squarefree, > 1; by convention d == 1 never survives normalization

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 1:
            raise ValueError("normalized radicand must be a squarefree integer > 1")

    @staticmethod
    def make(a, b, radicand):
        """Build a + b*sqrt(radicand) for any positive rational radicand.

        Returns a plain Fraction when the surd part vanishes or the radicand
        is a perfect square.
        """
        a, b = Fraction(a), Fraction(b)
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if b == 0 or radicand == 0:
            return a
        # sqrt(u/v) = sqrt(u*v)/v ; then u*v = s^2 * d with d squarefree
        u, v = radicand.numerator, radicand.denominator
        s, d = squarefree_split(u * v)
        b = b * Fraction(s, v)
        if d == 1:
            return a + b
        return QuadExt(a, b, d)

    @staticmethod
    def sqrt(radicand):
        return QuadExt.make(0, 1, radicand)

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return _sgn(a)
        if a == 0:
            return _sgn(b)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0  # impossible for squarefree d > 1, kept for safety
        return _sgn(a) if lhs > rhs else _sgn(b)

    def __bool__(self):
        return self.sign() != 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise IncompatibleRadicands(f"sqrt({self.d}) vs sqrt({other.d})")
            return _norm(self.a + other.a, self.b + other.b, self.d)
        return _norm(self.a + Fraction(other), self.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise IncompatibleRadicands(f"sqrt({self.d}) vs sqrt({other.d})")
            return _norm(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        q = Fraction(other)
        return _norm(self.a * q, self.b * q, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element of the quadratic field")
        return _norm(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        q = Fraction(other)
        return _norm(self.a / q, self.b / q, self.d)

    def __rtruediv__(self, other):
        return self.inverse() * Fraction(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.d != other.d:
                # canonical squarefree radicands: values over distinct d are
                # equal only if both surd parts vanish, which normalization
                # already folded into Fractions
                return False
            return self.a == other.a and self.b == other.b
        try:
            q = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.b == 0 and self.a == q

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadExt):
            return diff.sign()
        return _sgn(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversions ------------------------------------------------------

    def enclosure(self, width=Fraction(1, 10**40)) -> Interval:
        """Certified rational interval around the exact value."""
        surd = sqrt_enclosure(Fraction(self.d), width / (2 * (abs(self.b) + 1)))
        return Interval.point(self.a) + surd * self.b

    def __float__(self):
        iv = self.enclosure(Fraction(1, 10**25))
        return float(iv.mid)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def _norm(a: Fraction, b: Fraction, d: int):
    if b == 0:
        return a
    return QuadExt(a, b, d)


def _sgn(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def sqrt_in_field(value, d: int):
    """Square root of `value` inside Q(sqrt(d)) when one exists, else None.

    Handles the two cases that occur for discriminants of quadratics over
    Q(sqrt(d)) with rational-square content: value = r^2 or value = r^2 * d
    for rational r, plus the generic (u + v*sqrt(d))^2 pattern.
    """
    from .rational import rational_sqrt

    if isinstance(value, QuadExt):
        if value.d != d:
            raise IncompatibleRadicands(f"sqrt({value.d}) vs sqrt({d})")
        if value.sign() < 0:
            return None
        # solve (u + v sqrt d)^2 = a + b sqrt d: u^2 + v^2 d = a, 2uv = b
        a, b = value.a, value.b
        # u^2 is a root of z^2 - a z + b^2 d / 4
        disc = a * a - b * b * d
        rdisc = rational_sqrt(disc)
        if rdisc is None:
            return None
        for usq in ((a + rdisc) / 2, (a - rdisc) / 2):
            u = rational_sqrt(usq)
            if u is not None and u != 0:
                v = b / (2 * u)
                cand = _norm(u, v, d)
                if (cand * cand if isinstance(cand, QuadExt) else cand * cand) == value:
                    if (cand.sign() if isinstance(cand, QuadExt) else _sgn(cand)) >= 0:
                        return cand
                    return -cand
        return None
    q = Fraction(value)
    if q < 0:
        return None
    r = rational_sqrt(q)
    if r is not None:
        return r
    r = rational_sqrt(q / d)
    if r is not None:
        return _norm(Fraction(0), r, d)
    return None
