"""Dense univariate polynomials over the rationals.

Coefficients are exact Fractions in ascending-degree order. Everything here
is exact: Sturm counts, square-free splitting (Yun), bisection isolation and
refinement never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from ..errors import EndpointRoot, NotIsolating, ZeroPolynomial
from .interval import Interval


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def const(c) -> "UniPoly":
        return UniPoly((Fraction(c),))

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly((0, 1))

    @staticmethod
    def monomial(c, n: int) -> "UniPoly":
        return UniPoly((0,) * n + (Fraction(c),))

    @staticmethod
    def from_roots(roots) -> "UniPoly":
        p = UniPoly.const(1)
        for r in roots:
            p = p * UniPoly((-Fraction(r), 1))
        return p

    # -- basic structure --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        return UniPoly(tuple(c * a for a in self.coeffs))

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.leading
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            factor = rem[-1] / lc
            q[k] = factor
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= factor * c
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, x):
        """Horner evaluation; works for Fraction, QuadExt, Interval, mpf."""
        if self.is_zero:
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(c)
        return acc

    # -- gcd / square-free ------------------------------------------------

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd via a primitive pseudo-remainder sequence.

        Working on content-stripped integer coefficients sidesteps the
        coefficient explosion of the naive rational Euclid chain.
        """
        a, b = self, other
        if a.is_zero:
            return b.monic()
        if b.is_zero:
            return a.monic()
        fa = _strip_content(a.primitive_integer_coeffs())
        fb = _strip_content(b.primitive_integer_coeffs())
        if len(fa) < len(fb):
            fa, fb = fb, fa
        while fb:
            fa, fb = fb, _strip_content(_int_prem(fa, fb))
        g = UniPoly(fa)
        return g.monic()

    def square_free_part(self) -> "UniPoly":
        if self.is_zero:
            raise ZeroPolynomial("square-free part of zero polynomial")
        if self.degree == 0:
            return UniPoly.const(1)
        return (self // self.gcd(self.derivative())).monic()

    def square_free_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: returns [(g_i, i)] with p = lc * prod g_i^i, g_i square-free."""
        if self.is_zero:
            raise ZeroPolynomial("square-free decomposition of zero polynomial")
        p = self.monic()
        if p.degree == 0:
            return []
        out = []
        dp = p.derivative()
        a = p.gcd(dp)
        b = p // a
        c = dp // a
        i = 1
        while b.degree > 0:
            d = c - b.derivative()
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g.monic(), i))
            b, c = b // g, d // g
            i += 1
        return out

    # -- integer form / rational roots -------------------------------------

    def primitive_integer_coeffs(self) -> list[int]:
        """Scale to integer coefficients with content 1 (sign of leading kept)."""
        if self.is_zero:
            raise ZeroPolynomial("no primitive form of zero polynomial")
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        return [v // g for v in ints]

    def rational_roots(self) -> list[Fraction]:
        """All rational roots (each listed once), via the rational root theorem."""
        if self.is_zero:
            raise ZeroPolynomial("rational roots of zero polynomial")
        ints = self.primitive_integer_coeffs()
        roots = []
        shift = 0
        while ints[shift] == 0:
            shift += 1
        if shift:
            roots.append(Fraction(0))
            ints = ints[shift:]
        if len(ints) == 1:
            return roots
        for p in _divisors(abs(ints[0])):
            for q in _divisors(abs(ints[-1])):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and self(cand) == 0:
                        roots.append(cand)
        return sorted(roots)


def _coerce(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly.const(x)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return []
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# -- Sturm machinery -------------------------------------------------------


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Signed-remainder chain p, p', -rem(...), ...; valid for non-square-free p.

    A common factor multiplies every chain element, which cannot change sign
    variation counts at non-roots, so the chain counts distinct roots as is.
    """
    if p.is_zero:
        raise ZeroPolynomial("Sturm chain of zero polynomial")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero:
        chain.pop()
    return chain


def _variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: list[UniPoly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of chain[0] in (lo, hi]; endpoints must not be roots of chain[0]."""
    return _variations(p(lo) for p in chain) - _variations(p(hi) for p in chain)


def sturm_root_count(p: UniPoly, iv: Interval) -> int:
    """Exact number of distinct real roots of p in the open interval (iv.lo, iv.hi)."""
    if p.is_zero:
        raise ZeroPolynomial("root count of zero polynomial")
    if not iv.lo < iv.hi:
        raise ValueError("need iv.lo < iv.hi")
    if p(iv.lo) == 0 or p(iv.hi) == 0:
        raise EndpointRoot(f"polynomial vanishes at an endpoint of [{iv.lo}, {iv.hi}]")
    return sturm_count(sturm_chain(p), iv.lo, iv.hi)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie strictly inside (-M, M)."""
    if p.is_zero:
        raise ZeroPolynomial("root bound of zero polynomial")
    lead = abs(p.leading)
    rest = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + rest / lead


def _isolate_squarefree(g: UniPoly, lo: Fraction, hi: Fraction, chain) -> list[Interval]:
    """Disjoint isolating intervals for all roots of square-free g in (lo, hi).

    Endpoints must not be roots. Exact rational roots found by a midpoint hit
    are returned as point intervals after deflation.
    """
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = sturm_count(chain, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(Interval(a, b))
            continue
        mid = (a + b) / 2
        if g(mid) == 0:
            out.append(Interval.point(mid))
            g = g // UniPoly((-mid, 1))
            chain = sturm_chain(g) if g.degree > 0 else [g]
            if g.degree == 0:
                continue
        stack.append((a, mid))
        stack.append((mid, b))
    return out


def isolate_real_roots(g: UniPoly) -> list[Interval]:
    """Isolating intervals for the real roots of a square-free polynomial."""
    if g.degree <= 0:
        return []
    m = root_bound(g)
    return sorted(_isolate_squarefree(g, -m, m, sturm_chain(g)), key=lambda iv: iv.lo)


def isolate_roots(p: UniPoly) -> list[tuple[Interval, int]]:
    """All real roots of p as (isolating interval, multiplicity), sorted.

    Multiplicities come from square-free factorization, not from clustering;
    intervals of distinct roots are refined until pairwise disjoint.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    found: list[tuple[Interval, int, UniPoly]] = []
    for g, mult in p.square_free_decomposition():
        for iv in isolate_real_roots(g):
            found.append((iv, mult, g))
    # separate intervals of distinct roots (factors are pairwise coprime, so
    # equal roots across entries cannot occur)
    changed = True
    while changed:
        changed = False
        for i in range(len(found)):
            for j in range(i + 1, len(found)):
                if found[i][0].intersects(found[j][0]):
                    iv, m, g = found[i]
                    found[i] = (refine_to(g, iv, iv.width / 4), m, g)
                    iv, m, g = found[j]
                    found[j] = (refine_to(g, iv, iv.width / 4), m, g)
                    changed = True
    return sorted(((iv, m) for iv, m, _ in found), key=lambda t: t[0].lo)


def refine_to(g: UniPoly, iv: Interval, width: Fraction) -> Interval:
    """Bisection refinement of an isolating interval of square-free g.

    The enclosed root is preserved; a midpoint hitting the root exactly
    collapses the interval to a point.
    """
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    flo = g(lo)
    if flo == 0 or g(hi) == 0:
        # endpoint is the root itself (possible for point-refined callers)
        root = lo if flo == 0 else hi
        return Interval.point(root)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = g(mid)
        if fm == 0:
            return Interval.point(mid)
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return Interval(lo, hi)


def refine_root(p: UniPoly, iv: Interval, width: Fraction) -> Interval:
    """Shrink an isolating interval of p to the requested width, exactly.

    Raises NotIsolating unless Sturm reports exactly one distinct root of p
    in the open interval. Refinement runs on the square-free part so that
    even-multiplicity roots (no sign change in p) still bisect correctly.
    """
    if p.is_zero:
        raise ZeroPolynomial("refine_root of zero polynomial")
    width = Fraction(width)
    if iv.lo == iv.hi:
        if p(iv.lo) != 0:
            raise NotIsolating("point interval does not contain a root")
        return iv
    if sturm_root_count(p, iv) != 1:
        raise NotIsolating(f"interval [{iv.lo}, {iv.hi}] does not isolate exactly one root")
    g = p.square_free_part()
    if g(iv.lo) == 0:
        return Interval.point(iv.lo)
    if g(iv.hi) == 0:
        return Interval.point(iv.hi)
    return refine_to(g, iv, width)
