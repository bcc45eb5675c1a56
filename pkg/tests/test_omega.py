from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallach.core import AParams, catalog_space, expected_region
from wallach.errors import BoundaryInput, OutOfRange
from wallach.exactnum import Interval, QuadExt
from wallach.omega import (
    O1_REFERENCE,
    O2_REFERENCE,
    classify_region,
    edge_point,
    eval_Q,
    eval_Q_expanded,
    eval_Q_raw,
    grad_Q,
    restrict_to_segment,
    section_cubic,
    section_quadratic,
    symfun,
    triangle_test,
    x_hat,
    x_tilde,
)

cube_rationals = st.fractions(
    min_value=F(1, 100), max_value=F(49, 100), max_denominator=60
)


def aparams(t):
    return AParams(*t)


class TestSymfun:
    def test_sixth(self):
        s = symfun(aparams((F(1, 6), F(1, 6), F(1, 6))))
        assert (s.s1, s.s2, s.s3) == (F(1, 2), F(1, 12), F(1, 216))

    def test_quarter(self):
        s = symfun(aparams((F(1, 4), F(1, 4), F(1, 4))))
        assert (s.s1, s.s2, s.s3) == (F(3, 4), F(3, 16), F(1, 64))

    def test_mixed(self):
        s = symfun(aparams((F(1, 6), F(1, 4), F(1, 3))))
        assert s.s1 == F(3, 4)


class TestEvalQ:
    def test_cube_vertex_is_zero(self):
        assert eval_Q_raw(0, 0, F(1, 2)) == 0

    def test_reference_signs(self):
        assert eval_Q(aparams(O1_REFERENCE)) == F(-256, 531441)
        assert eval_Q(aparams(O1_REFERENCE)) < 0
        assert eval_Q(aparams(O2_REFERENCE)) < 0
        assert eval_Q(aparams((F(1, 6), F(1, 4), F(1, 3)))) > 0

    def test_edge_point_is_zero(self):
        assert eval_Q(edge_point(F(3, 10))) == 0

    def test_center_is_zero(self):
        assert eval_Q(aparams((F(1, 4), F(1, 4), F(1, 4)))) == 0

    @given(cube_rationals, cube_rationals, cube_rationals)
    @settings(max_examples=60)
    def test_permutation_symmetry(self, a1, a2, a3):
        vals = {eval_Q(aparams(p)) for p in permutations((a1, a2, a3))}
        assert len(vals) == 1

    @given(cube_rationals, cube_rationals, cube_rationals)
    @settings(max_examples=40)
    def test_expanded_form_agrees(self, a1, a2, a3):
        a = aparams((a1, a2, a3))
        assert eval_Q(a) == eval_Q_expanded(a)


class TestGradQ:
    def test_center_singular(self):
        assert grad_Q(aparams((F(1, 4),) * 3)) == (0, 0, 0)

    def test_edge_singular(self):
        assert grad_Q(edge_point(F(3, 10))) == (0, 0, 0)
        assert grad_Q(edge_point(F(1, 5))) == (0, 0, 0)

    def test_off_surface_nonzero(self):
        g = grad_Q(aparams(O1_REFERENCE))
        assert g == (F(2560, 177147),) * 3
        assert any(v != 0 for v in g)


class TestEdgePoint:
    def test_center(self):
        assert edge_point(F(1, 4)).as_tuple() == (F(1, 4), F(1, 4), F(1, 4))

    def test_exact_value(self):
        assert edge_point(F(3, 10)).as_tuple() == (F(29, 70), F(3, 10), F(3, 10))

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            edge_point(F(1, 100))  # a1 lands outside (0, 1/2)
        with pytest.raises(OutOfRange):
            edge_point(F(9, 10))

    @given(st.fractions(min_value=F(16, 100), max_value=F(33, 100), max_denominator=50))
    @settings(max_examples=30)
    def test_on_surface_with_zero_gradient(self, t):
        a = edge_point(t)
        assert eval_Q(a) == 0
        assert grad_Q(a) == (0, 0, 0)


class TestXHat:
    def test_endpoint_values(self):
        assert x_hat(F(1, 2)) == F(1, 4)
        assert x_hat(F(3, 4)) == F(1, 4)

    def test_surd_input(self):
        h_star = QuadExt.make(F(-1, 2), F(3, 4), 2)  # (3 sqrt 2 - 2)/4
        val = x_hat(h_star)
        assert val == QuadExt.make(F(-1, 2), F(1, 2), 2)  # (sqrt 2 - 1)/2

    def test_satisfies_quadratic_exactly(self):
        for h in (F(21, 40), F(3, 5), F(7, 10), F(73, 100)):
            v = x_hat(h)
            q = section_quadratic(h)
            residual = q(v)
            if isinstance(residual, QuadExt):
                assert residual.sign() == 0
            else:
                assert residual == 0

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            x_hat(F(2, 5))
        with pytest.raises(OutOfRange):
            x_hat(F(4, 5))


class TestXTilde:
    def test_boundary_closed(self):
        assert x_tilde(F(3, 4), closed=True) == Interval.point(F(1, 4))
        with pytest.raises(OutOfRange):
            x_tilde(F(3, 4))

    def test_inside_first_third(self):
        iv = x_tilde(F(7, 10), width=F(1, 10**12))
        assert 0 < iv.lo and iv.hi < F(7, 30)
        assert iv.width <= F(1, 10**12)

    def test_sign_change_enclosure(self):
        for h in (F(11, 20), F(3, 5), F(73, 100)):
            iv = x_tilde(h, width=F(1, 10**9))
            f = section_cubic(h)
            assert f(iv.lo) * f(iv.hi) < 0

    @given(st.fractions(min_value=F(51, 100), max_value=F(74, 100), max_denominator=90))
    @settings(max_examples=25)
    def test_below_x_hat(self, h):
        tilde = x_tilde(h, width=F(1, 10**15))
        hat = x_hat(h)
        hat_hi = hat.enclosure(F(1, 10**15)).hi if isinstance(hat, QuadExt) else hat
        assert tilde.hi < hat_hi


class TestTriangleTest:
    def test_inside_inner_triangle(self):
        # the (9,9,9) SO-point: 9^2 > 2*9 + 2*9 - 4
        assert triangle_test(aparams((F(9, 50),) * 3)) == "InsideIT_O1"

    def test_outside_outer_triangle(self):
        # the (10,10,2) SO-point: 2^2 < 10 + 10
        assert triangle_test(aparams((F(1, 4), F(1, 4), F(1, 20)))) == "OutsideST_O3"

    def test_surface_point_indeterminate(self):
        # an edge point with the section sum inside (1/2, 3/4)
        assert triangle_test(edge_point(F(1, 5))) == "Indeterminate"

    def test_out_of_range_sum(self):
        with pytest.raises(OutOfRange):
            triangle_test(aparams((F(1, 8), F(1, 8), F(1, 8))))
        with pytest.raises(OutOfRange):
            triangle_test(edge_point(F(3, 10)))  # section sum 71/70 > 3/4

    def test_never_contradicts_sign(self):
        points = [
            (F(9, 50), F(9, 50), F(9, 50)),
            (F(1, 4), F(1, 4), F(1, 20)),
            (F(13, 60), F(11, 60), F(1, 5)),
            (F(3, 10), F(1, 5), F(1, 10)),
        ]
        for pt in points:
            a = aparams(pt)
            verdict = triangle_test(a)
            if verdict == "InsideIT_O1":
                assert eval_Q(a) < 0
            elif verdict == "OutsideST_O3":
                assert eval_Q(a) > 0


class TestSegmentRestriction:
    def test_degree_and_endpoints(self):
        p = restrict_to_segment(O1_REFERENCE, O2_REFERENCE)
        assert p.degree == 12
        assert p(F(0)) == eval_Q(aparams(O1_REFERENCE))
        assert p(F(1)) == eval_Q(aparams(O2_REFERENCE))

    def test_diagonal_touches_surface_once(self):
        # the diagonal meets the surface exactly at a = 1/4, i.e. tau = 5/18,
        # where Q touches zero without changing sign
        from wallach.exactnum import Interval as Iv
        from wallach.exactnum import isolate_roots, sturm_root_count

        p = restrict_to_segment(O1_REFERENCE, O2_REFERENCE)
        assert sturm_root_count(p, Iv(F(0), F(1))) == 1
        assert p(F(5, 18)) == 0
        inside = [(iv, m) for iv, m in isolate_roots(p) if 0 < iv.mid < 1]
        assert len(inside) == 1
        assert inside[0][1] % 2 == 0  # even multiplicity: a touch, not a crossing


class TestClassifyRegion:
    def test_reference_points(self):
        assert classify_region(aparams(O1_REFERENCE)).label == "O1"
        assert classify_region(aparams(O2_REFERENCE)).label == "O2"
        assert classify_region(aparams((F(1, 6), F(1, 4), F(1, 3)))).label == "O3"

    def test_edge_point(self):
        label = classify_region(aparams((F(29, 70), F(3, 10), F(3, 10))))
        assert label.label == "Omega" and label.q_sign == 0

    def test_catalog_line_11(self):
        label = classify_region(aparams((F(5, 18), F(5, 18), F(5, 18))))
        assert label.label == "O2"

    def test_boundary_rejected(self):
        with pytest.raises(BoundaryInput):
            classify_region(AParams(F(1, 2), F(1, 4), F(1, 4), boundary=True))

    def test_diagonal_split(self):
        assert classify_region(aparams((F(23, 100),) * 3)).label == "O1"
        assert classify_region(aparams((F(27, 100),) * 3)).label == "O2"
        assert classify_region(aparams((F(1, 4),) * 3)).label == "Omega"

    @given(cube_rationals, cube_rationals, cube_rationals)
    @settings(max_examples=30, deadline=None)
    def test_permutation_invariant(self, a1, a2, a3):
        labels = {
            classify_region(aparams(p)).label for p in permutations((a1, a2, a3))
        }
        assert len(labels) == 1


def _family_samples(line):
    if line in (2, 3):
        return [(2, 2, 1), (3, 2, 2), (5, 3, 1)]
    if line == 4:
        return [2, 3, 7]
    if line == 5:
        return [4, 5, 9]
    return [None]


class TestCatalogCrossCheck:
    @pytest.mark.parametrize("line", range(2, 16))
    def test_lines_2_to_15(self, line):
        for params in _family_samples(line):
            space = catalog_space(line, params)
            assert classify_region(space.params).label == expected_region(line), (
                f"line {line}, params {params}"
            )
