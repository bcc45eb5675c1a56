from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallach.errors import EndpointRoot, NotIsolating, ZeroPolynomial
from wallach.exactnum import (
    Interval,
    QuadExt,
    UniPoly,
    decimal_str,
    isolate_roots,
    parse_rational,
    rational_sqrt,
    refine_root,
    sqrt_enclosure,
    sqrt_in_field,
    squarefree_split,
    sturm_chain,
    sturm_count,
    sturm_root_count,
)

rationals = st.fractions(
    min_value=F(-50), max_value=F(50), max_denominator=40
)


class TestRational:
    def test_parse(self):
        assert parse_rational("2/3") == F(2, 3)
        assert parse_rational("-7") == F(-7)
        with pytest.raises(Exception):
            parse_rational("0.5")
        with pytest.raises(Exception):
            parse_rational("1/0")

    def test_decimal_str(self):
        assert decimal_str(F(1, 3), 6) == "0.333333"
        assert decimal_str(F(2, 3), 6) == "0.666667"
        assert decimal_str(F(-1, 2), 3) == "-0.500"
        assert decimal_str(F(5), 2) == "5.00"

    def test_squarefree_split(self):
        assert squarefree_split(8) == (2, 2)
        assert squarefree_split(1) == (1, 1)
        assert squarefree_split(360) == (6, 10)

    def test_rational_sqrt(self):
        assert rational_sqrt(F(9, 4)) == F(3, 2)
        assert rational_sqrt(F(2)) is None

    @given(st.integers(min_value=1, max_value=10**6))
    def test_squarefree_property(self, n):
        s, d = squarefree_split(n)
        assert s * s * d == n
        for p in range(2, 40):
            assert d % (p * p) != 0


class TestInterval:
    def test_ordering(self):
        with pytest.raises(ValueError):
            Interval(1, 0)

    def test_sign(self):
        assert Interval(1, 2).sign() == 1
        assert Interval(-2, -1).sign() == -1
        assert Interval(-1, 1).sign() is None
        assert Interval.point(0).sign() == 0

    @given(rationals, rationals, rationals, rationals, rationals, rationals)
    @settings(max_examples=150)
    def test_arithmetic_containment(self, a, b, c, d, x, y):
        iv1 = Interval(min(a, b), max(a, b))
        iv2 = Interval(min(c, d), max(c, d))
        # clamp the sample points into the intervals
        p = min(max(x, iv1.lo), iv1.hi)
        q = min(max(y, iv2.lo), iv2.hi)
        assert (iv1 + iv2).contains(p + q)
        assert (iv1 - iv2).contains(p - q)
        assert (iv1 * iv2).contains(p * q)
        if iv2.lo > 0 or iv2.hi < 0:
            assert (iv1 / iv2).contains(p / q)

    def test_sqrt_enclosure(self):
        iv = sqrt_enclosure(F(2), F(1, 10**12))
        assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
        assert iv.width <= F(1, 10**12)

    def test_rational_power(self):
        iv = Interval(F(2), F(2)).pow_rational(F(3, 2), F(1, 10**10))
        # 2^(3/2) = sqrt(8)
        assert iv.lo**2 <= 8 <= iv.hi**2


class TestQuadExt:
    def test_normalization(self):
        v = QuadExt.make(0, 1, F(1, 2))  # sqrt(1/2) = sqrt(2)/2
        assert isinstance(v, QuadExt)
        assert v.d == 2 and v.b == F(1, 2)
        assert QuadExt.make(3, 0, 5) == F(3)
        assert QuadExt.make(1, 2, 9) == F(7)  # perfect square radicand collapses

    def test_field_ops(self):
        r2 = QuadExt.sqrt(2)
        assert r2 * r2 == F(2)
        assert (1 + r2) * (1 - r2) == F(-1)
        assert (1 / (1 + r2)) * (1 + r2) == F(1)
        assert (r2**3) == 2 * r2

    def test_sign_and_order(self):
        r2 = QuadExt.sqrt(2)
        assert (r2 - 1).sign() == 1
        assert (r2 - F(3, 2)).sign() == -1
        assert (7 - 5 * r2).sign() < 0  # 5*sqrt(2) = 7.07...
        assert r2 > F(7, 5) and r2 < F(3, 2)

    def test_remark_style_value(self):
        # 2t^2 - (t^2-1) sqrt(t/(t+2)) at t = 2 must be positive
        surd = QuadExt.make(0, 3, F(1, 2))
        assert (8 - surd).sign() == 1
        enc = (8 - surd).enclosure(F(1, 10**20))
        assert enc.width <= F(1, 10**20)
        assert enc.contains(F("5.87867965644035742679746691368"))

    def test_sqrt_in_field(self):
        # 1/2 = (1/2)^2 * 2 inside Q(sqrt 2)
        r = sqrt_in_field(F(1, 2), 2)
        assert r == QuadExt(F(0), F(1, 2), 2)
        assert sqrt_in_field(F(9, 4), 2) == F(3, 2)
        assert sqrt_in_field(F(3), 2) is None
        # (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        v = QuadExt(F(3), F(2), 2)
        assert sqrt_in_field(v, 2) == QuadExt(F(1), F(1), 2)

    def test_incompatible_radicands(self):
        with pytest.raises(Exception):
            QuadExt.sqrt(2) + QuadExt.sqrt(3)


class TestSturm:
    def test_basic_count(self):
        p = UniPoly([-2, 0, 1])  # x^2 - 2
        assert sturm_root_count(p, Interval(0, 2)) == 1
        assert sturm_root_count(p, Interval(-2, 2)) == 2
        assert sturm_root_count(p, Interval(2, 3)) == 0

    def test_section_cubic_at_three_quarters(self):
        # 16x^3 - 12x^2 + 1/2 has exactly one root left of 1/4 + 1/100
        f = UniPoly([F(1, 2), 0, -12, 16])
        assert f(F(1, 4)) == 0
        assert sturm_root_count(f, Interval(0, F(1, 4) + F(1, 100))) == 1

    def test_endpoint_root_rejected(self):
        p = UniPoly([-1, 1])
        with pytest.raises(EndpointRoot):
            sturm_root_count(p, Interval(1, 2))
        with pytest.raises(ZeroPolynomial):
            sturm_root_count(UniPoly.zero(), Interval(0, 1))

    def test_multiple_roots_counted_once(self):
        p = UniPoly.from_roots([1, 1, 1, 2])
        assert sturm_root_count(p, Interval(0, 3)) == 2

    @given(
        st.lists(st.fractions(min_value=F(-5), max_value=F(5), max_denominator=6),
                 min_size=1, max_size=5)
    )
    @settings(max_examples=80)
    def test_additivity(self, roots):
        p = UniPoly.from_roots(roots)
        pts = (F(-11), F(0), F(11))
        if any(p(v) == 0 for v in pts):
            return
        chain = sturm_chain(p)
        total = sturm_count(chain, pts[0], pts[2])
        split = sturm_count(chain, pts[0], pts[1]) + sturm_count(chain, pts[1], pts[2])
        assert total == split
        assert total == len(set(roots))


class TestIsolation:
    def test_simple_factored(self):
        roots = isolate_roots(UniPoly([2, -3, 1]))  # (x-1)(x-2)
        assert len(roots) == 2
        assert roots[0][0].contains(1) and roots[0][1] == 1
        assert roots[1][0].contains(2) and roots[1][1] == 1

    def test_double_root(self):
        roots = isolate_roots(UniPoly.from_roots([1, 1]))
        assert len(roots) == 1
        iv, mult = roots[0]
        assert mult == 2 and iv.contains(1)

    def test_section_cubic_three_roots(self):
        # 16x^3 - 16hx^2 + 2h - 1 at h = 7/10: roots straddle 0, (0, h/3), (h/2, inf)
        h = F(7, 10)
        f = UniPoly([2 * h - 1, 0, -16 * h, 16])
        roots = isolate_roots(f)
        assert len(roots) == 3
        assert all(m == 1 for _, m in roots)
        first, second, third = (iv for iv, _ in roots)
        assert first.hi < 0
        assert 0 < second.lo and second.hi < h / 3
        assert third.lo > h / 2

    def test_multiplicity_degree_accounting(self):
        p = UniPoly.from_roots([1, 1, 2]) * UniPoly([1, 0, 1])  # (x-1)^2 (x-2) (x^2+1)
        roots = isolate_roots(p)
        assert sum(m for _, m in roots) == p.degree - 2

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            isolate_roots(UniPoly.zero())


class TestRefine:
    def test_sqrt2(self):
        p = UniPoly([-2, 0, 1])
        iv = refine_root(p, Interval(1, 2), F(1, 1000))
        assert iv.width <= F(1, 1000)
        assert iv.lo**2 <= 2 <= iv.hi**2

    def test_section_cubic_at_boundary(self):
        f = UniPoly([F(1, 2), 0, -12, 16])  # h = 3/4; root exactly 1/4
        iv = refine_root(f, Interval(F(1, 5), F(3, 10)), F(1, 10**12))
        assert iv.contains(F(1, 4))

    def test_not_isolating(self):
        p = UniPoly([2, -3, 1])
        with pytest.raises(NotIsolating):
            refine_root(p, Interval(0, 3), F(1, 10))

    def test_even_multiplicity_refines(self):
        p = UniPoly.from_roots([F(3, 7), F(3, 7)])
        iv = refine_root(p, Interval(0, 1), F(1, 10**6))
        assert iv.contains(F(3, 7))

    def test_output_inside_input(self):
        p = UniPoly([-2, 0, 1])
        iv = refine_root(p, Interval(1, 2), F(1, 10**9))
        assert 1 <= iv.lo and iv.hi <= 2
