"""The algebraic surface that partitions the parameter cube.

The classifying polynomial Q is a symmetric polynomial of degree 12 in
(a1, a2, a3), expressed through the elementary symmetric functions
(s1, s2, s3). Its sign splits (0,1/2)^3 minus the surface into the three
components O1, O2, O3; the zero set is the surface itself. Everything in
this module is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import AParams
from .errors import BoundaryInput, OutOfRange, SegmentInconclusive
from .exactnum import (
    Interval,
    QuadExt,
    UniPoly,
    rational_sqrt,
    sqrt_enclosure,
    sqrt_in_field,
    sturm_root_count,
)

# reference points of the three components
O1_REFERENCE = (Fraction(1, 6), Fraction(1, 6), Fraction(1, 6))
O2_REFERENCE = (Fraction(7, 15), Fraction(7, 15), Fraction(7, 15))
O3_REFERENCE = (Fraction(1, 6), Fraction(1, 4), Fraction(1, 3))


@dataclass(frozen=True)
class SymTriple:
    s1: Fraction
    s2: Fraction
    s3: Fraction


@dataclass(frozen=True)
class RegionLabel:
    label: str  # O1 | O2 | O3 | Omega
    q_sign: int
    method: str

    def __post_init__(self):
        expected = {"Omega": 0, "O3": 1, "O1": -1, "O2": -1}[self.label]
        if self.q_sign != expected:
            raise ValueError(f"inconsistent label {self.label} with q_sign {self.q_sign}")


def symfun(a: AParams) -> SymTriple:
    """Elementary symmetric functions of the parameter triple, exactly."""
    a1, a2, a3 = a.as_tuple()
    return SymTriple(a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3)


# -- the polynomial in (s1, s2, s3) ------------------------------------------


class _TriPoly:
    """Tiny sparse polynomial in three variables used to expand Q once."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[e] = c

    @staticmethod
    def var(i):
        e = [0, 0, 0]
        e[i] = 1
        return _TriPoly({tuple(e): 1})

    @staticmethod
    def const(c):
        return _TriPoly({(0, 0, 0): c})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return _TriPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return _TriPoly(out)

    def scale(self, c):
        c = Fraction(c)
        return _TriPoly({e: c * v for e, v in self.terms.items()})

    def __pow__(self, n):
        out = _TriPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return _TriPoly(out)

    def eval(self, vals):
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * vals[0] ** i * vals[1] ** j * vals[2] ** k
        return total

    def substitute(self, polys):
        """Plug a _TriPoly in for each variable and expand."""
        out = _TriPoly()
        for (i, j, k), c in self.terms.items():
            term = _TriPoly.const(c)
            for var, exp in zip(polys, (i, j, k)):
                if exp:
                    term = term * var**exp
            out = out + term
        return out


def _build_q_spoly() -> _TriPoly:
    s1, s2, s3 = (_TriPoly.var(i) for i in range(3))
    one = _TriPoly.const(1)
    t1 = s1.scale(2) + s3.scale(4) - one
    t2 = (
        (s1**5).scale(64)
        + (s1**4).scale(-64)
        + (s1**3).scale(8)
        + (s1**2).scale(12)
        + s1.scale(-6)
        + one
        + (s3 * s1**2).scale(240)
        + (s3 * s1).scale(-240)
        + (s3**2 * s1).scale(-1536)
        + (s3**3).scale(-4096)
        + s3.scale(60)
        + (s3**2).scale(768)
    )
    t3 = s1.scale(2) - s3.scale(32) - one
    t4 = s1.scale(10) + s3.scale(32) - one.scale(5)
    b = (
        one.scale(13)
        + s1.scale(-52)
        + (s3 * s1).scale(640)
        + (s3**2).scale(1024)
        + s3.scale(-320)
        + (s1**2).scale(52)
    )
    two_s1_minus_1 = s1.scale(2) - one
    return (
        t1 * t2
        - (s1 * t1 * t3 * t4 * s2).scale(8)
        - (s1**2 * b * s2**2).scale(16)
        + (two_s1_minus_1 * t3 * s2**3).scale(64)
        + (s1 * two_s1_minus_1 * s2**4).scale(2048)
    )


_Q_S = _build_q_spoly()
_DQ_DS = tuple(_Q_S.diff(i) for i in range(3))
_Q_EXPANDED_CACHE: list = []


def _q_expanded() -> _TriPoly:
    """Fully expanded degree-12 form in (a1, a2, a3), built once and reused."""
    if not _Q_EXPANDED_CACHE:
        a1, a2, a3 = (_TriPoly.var(i) for i in range(3))
        subs = (a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3)
        _Q_EXPANDED_CACHE.append(_Q_S.substitute(subs))
    return _Q_EXPANDED_CACHE[0]


def eval_Q(a: AParams) -> Fraction:
    """Exact value of the degree-12 classifying polynomial."""
    s = symfun(a)
    return _Q_S.eval((s.s1, s.s2, s.s3))


def eval_Q_raw(a1, a2, a3) -> Fraction:
    """Q at an arbitrary rational point, without the cube-membership checks.

    The polynomial itself is defined on all of R^3 (the closed-cube corners
    are legitimate zeros); only the region classifier needs the open cube.
    """
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    s = (a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3)
    return _Q_S.eval(s)


def eval_Q_expanded(a: AParams) -> Fraction:
    """Same value through the independently expanded monomial form.

    Kept as a redundant evaluation path against transcription slips in the
    long coefficient list; the test suite pins agreement with eval_Q.
    """
    return _q_expanded().eval(a.as_tuple())


def grad_Q(a: AParams) -> tuple[Fraction, Fraction, Fraction]:
    """Exact gradient, via the chain rule through (s1, s2, s3)."""
    a1, a2, a3 = a.as_tuple()
    s = symfun(a)
    vals = (s.s1, s.s2, s.s3)
    d1, d2, d3 = (p.eval(vals) for p in _DQ_DS)
    return (
        d1 + d2 * (a2 + a3) + d3 * (a2 * a3),
        d1 + d2 * (a1 + a3) + d3 * (a1 * a3),
        d1 + d2 * (a1 + a2) + d3 * (a1 * a2),
    )


def q_sign(a: AParams) -> int:
    v = eval_Q(a)
    return (v > 0) - (v < 0)


# -- section machinery (planes a1+a2+a3 = h) ---------------------------------


def section_quadratic(h) -> UniPoly:
    """16 x^2 - (24h-4) x + 8h^2 - 4h + 1; its small root on [0, h/2] is x_hat(h)."""
    h = Fraction(h)
    return UniPoly([8 * h * h - 4 * h + 1, -(24 * h - 4), 16])


def section_cubic(h) -> UniPoly:
    """16 x^3 - 16h x^2 + 2h - 1; its root in (0, h/3) is x_tilde(h)."""
    h = Fraction(h)
    return UniPoly([2 * h - 1, 0, -16 * h, 16])


def x_hat(h):
    """(6h - 1 - sqrt(4h^2 + 4h - 3)) / 8 for h in [1/2, 3/4], exactly.

    Rational h gives a rational or quadratic-surd result; a surd h is kept in
    its field when the discriminant permits, otherwise a certified enclosure
    is returned.
    """
    if isinstance(h, QuadExt):
        if h < Fraction(1, 2) or h > Fraction(3, 4):
            raise OutOfRange(f"x_hat needs 1/2 <= h <= 3/4, got {h!r}")
        disc = 4 * h * h + 4 * h - 3
        root = (
            sqrt_in_field(disc, h.d)
            if isinstance(disc, QuadExt) or disc >= 0
            else None
        )
        if root is not None:
            return (6 * h - 1 - root) / 8
        denc = disc.enclosure() if isinstance(disc, QuadExt) else Interval.point(disc)
        rt = Interval(
            sqrt_enclosure(denc.lo).lo if denc.lo > 0 else Fraction(0),
            sqrt_enclosure(denc.hi).hi,
        )
        return (6 * h.enclosure() - 1 - rt) / 8
    h = Fraction(h)
    if not Fraction(1, 2) <= h <= Fraction(3, 4):
        raise OutOfRange(f"x_hat needs 1/2 <= h <= 3/4, got {h}")
    disc = 4 * h * h + 4 * h - 3
    r = rational_sqrt(disc)
    if r is not None:
        return (6 * h - 1 - r) / 8
    return (6 * h - 1 - QuadExt.sqrt(disc)) / 8


def x_tilde(h, width=Fraction(1, 10**30), closed: bool = False) -> Interval:
    """Certified enclosure of the root of the section cubic in (0, h/3).

    Strict range (1/2, 3/4); `closed=True` additionally admits h = 3/4 where
    the root degenerates to exactly 1/4.
    """
    h = Fraction(h)
    width = Fraction(width)
    if closed and h == Fraction(3, 4):
        return Interval.point(Fraction(1, 4))
    if not Fraction(1, 2) < h < Fraction(3, 4):
        raise OutOfRange(f"x_tilde needs 1/2 < h < 3/4, got {h}")
    f = section_cubic(h)
    lo, hi = Fraction(0), h / 3
    flo = f(lo)
    assert flo > 0 > f(hi)  # 2h-1 > 0 and f(h/3) = -(4h-3)^2 (2h+3)/27 < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return Interval.point(mid)
        if fm > 0:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


def edge_point(t) -> AParams:
    """Point (a1(t), t, t) on the singular edge of the surface.

    a1 = -(1/2)(16t^3 - 4t + 1)/(8t^2 - 1); admissibility inside the open
    cube is checked per point.
    """
    t = Fraction(t)
    den = 8 * t * t - 1
    if den == 0:
        raise OutOfRange("parametrization undefined at 8t^2 = 1")
    a1 = -Fraction(1, 2) * (16 * t**3 - 4 * t + 1) / den
    half = Fraction(1, 2)
    if not (0 < t < half and 0 < a1 < half):
        raise OutOfRange(f"edge point ({a1}, {t}, {t}) leaves the open cube")
    return AParams(a1, t, t)


def triangle_test(a: AParams) -> str:
    """Membership test against the inner/outer triangles of the h-section.

    'InsideIT_O1' when every a_i exceeds h - 2*x_hat(h), certified through
    the sign of the section quadratic at (h - a_i)/2 (the quadratic decreases
    on [0, h/2], so no surd is ever evaluated); 'OutsideST_O3' when some
    a_i < x_tilde(h), certified through the sign of the section cubic (which
    decreases on [0, 2h/3]); otherwise 'Indeterminate'.
    """
    if a.boundary:
        raise BoundaryInput("triangle test needs the open cube")
    h = sum(a.as_tuple())
    if not Fraction(1, 2) < h < Fraction(3, 4):
        raise OutOfRange(f"triangle test needs a1+a2+a3 in (1/2, 3/4), got {h}")
    quad = section_quadratic(h)
    if all(quad((h - ai) / 2) > 0 for ai in a):
        return "InsideIT_O1"
    cubic = section_cubic(h)
    if any(ai <= 2 * h / 3 and cubic(ai) > 0 for ai in a):
        return "OutsideST_O3"
    return "Indeterminate"


# -- region classification ----------------------------------------------------


def restrict_to_segment(a, b) -> UniPoly:
    """Q along the straight segment from a to b as a polynomial in tau in [0, 1]."""
    a = tuple(Fraction(v) for v in a)
    b = tuple(Fraction(v) for v in b)
    lines = [UniPoly([av, bv - av]) for av, bv in zip(a, b)]
    l1, l2, l3 = lines
    s1 = l1 + l2 + l3
    s2 = l1 * l2 + l1 * l3 + l2 * l3
    s3 = l1 * l2 * l3
    out = UniPoly.zero()
    for (i, j, k), c in _Q_S.terms.items():
        term = UniPoly.const(c)
        for base, exp in ((s1, i), (s2, j), (s3, k)):
            if exp:
                term = term * base**exp
        out = out + term
    return out


def _segment_root_count(a: AParams, ref) -> int:
    p = restrict_to_segment(a.as_tuple(), ref)
    if p.degree <= 0:
        return 0
    return sturm_root_count(p, Interval(Fraction(0), Fraction(1)))


def classify_region(a: AParams) -> RegionLabel:
    """Exact region of a parameter point in the open cube.

    Sign of Q settles Omega and O3 outright. For Q < 0 the point is in O1 or
    O2 and the decision runs: s1 <= 1/2 shortcut, then min a_i < 1/4
    shortcut, then exact segment tests towards the O1 and O2 reference
    points (a segment with no zero of Q cannot leave a component). If both
    segments cross the surface the classification is refused rather than
    guessed.
    """
    if a.boundary or max(a.as_tuple()) >= Fraction(1, 2):
        raise BoundaryInput("classification is defined on the open cube only")
    qv = eval_Q(a)
    if qv == 0:
        return RegionLabel("Omega", 0, "sign")
    if qv > 0:
        return RegionLabel("O3", 1, "sign")
    if sum(a.as_tuple()) <= Fraction(1, 2):
        return RegionLabel("O1", -1, "s1-shortcut")
    if a.min() < Fraction(1, 4):
        return RegionLabel("O1", -1, "quarter-shortcut")
    crossings_o1 = _segment_root_count(a, O1_REFERENCE)
    if crossings_o1 == 0:
        return RegionLabel("O1", -1, "segment-test")
    crossings_o2 = _segment_root_count(a, O2_REFERENCE)
    if crossings_o2 == 0:
        return RegionLabel("O2", -1, "segment-test")
    raise SegmentInconclusive(
        "both reference segments cross the surface",
        diagnostics={
            "a": [str(v) for v in a.as_tuple()],
            "crossings_to_O1_ref": crossings_o1,
            "crossings_to_O2_ref": crossings_o2,
        },
    )
