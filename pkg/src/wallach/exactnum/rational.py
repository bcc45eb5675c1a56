"""Helpers around the exact rational scalar type.

The package-wide exact scalar is `fractions.Fraction`: arbitrary precision,
always in lowest terms, positive denominator.
"""

from fractions import Fraction

from ..errors import ParseError

Rat = Fraction


def rat(p, q=None) -> Fraction:
    """Build an exact rational; `rat(2,3)` or `rat("2/3")` or `rat(5)`."""
    if q is not None:
        return Fraction(p, q)
    return Fraction(p)


def parse_rational(text: str) -> Fraction:
    """Parse an exact "p/q" or integer string; decimals are rejected.

    Decimal notation is not accepted on the exact side of the API so that no
    caller can smuggle in a rounded value.
    """
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ParseError(f"expected exact rational 'p/q', got {text!r}")
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse rational {text!r}: {exc}") from None


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q, digits: int = 30) -> str:
    """Fixed-point decimal rendering of a rational, correctly rounded to `digits`.

    Rounding is half-away-from-zero on the exact value, so the output is a
    deterministic function of (value, digits) with no binary-float detour.
    """
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q * 10**digits
    units = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator - units * scaled.denominator) >= scaled.denominator:
        units += 1
    whole, frac = divmod(units, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def sign(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def isqrt_exact(n: int):
    """Return the integer square root if `n` is a perfect square, else None."""
    if n < 0:
        return None
    r = _isqrt(n)
    return r if r * r == n else None


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def rational_sqrt(q: Fraction):
    """Return the exact square root of a rational if it is one, else None."""
    if q < 0:
        return None
    rn = isqrt_exact(q.numerator)
    rd = isqrt_exact(q.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s^2 * d with d squarefree; return (s, d). Requires n > 0.

    Factorization is by trial division, adequate for the radicand sizes that
    arise here (discriminants of small-coefficient quadratics).
    """
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d = 1, 1
    remaining = n
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            exp = 0
            while remaining % p == 0:
                remaining //= p
                exp += 1
            s *= p ** (exp // 2)
            if exp % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= remaining
    return s, d
