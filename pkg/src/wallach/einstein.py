"""Certified solving and counting of invariant Einstein metrics.

The Einstein condition on a space with parameters (a1, a2, a3) is the pair of
quadratic equations in (x1, x2, x3) below. The solver normalizes x3 := 1 so
homothety classes become points, eliminates x2 by a resultant, and carries
every root either exactly (rational or quadratic surd) or as a certified
enclosure with an algebraic zero-residual certificate. No root is ever
accepted on floating-point evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import AParams, MetricTriple
from .errors import BadParam, CertificationFailure, DegenerateSystem, WallachError
from .exactnum import (
    BivarPoly,
    Interval,
    QuadExt,
    UniPoly,
    isolate_real_roots,
    rational_sqrt,
    refine_to,
    resultant_y,
    sqrt_enclosure,
    sturm_chain,
    sturm_count,
)

DEFAULT_WIDTH = Fraction(1, 10**30)


def system_coefficients(a: AParams):
    """The two Einstein equations as coefficient maps of the full (x1,x2,x3) form."""
    a1, a2, a3 = a.as_tuple()
    c1 = {
        "x2x2": (a2 + a3) * a1,
        "x3x3": (a2 + a3) * a1,
        "x2x3": -(a2 + a3),
        "x1x2": a2,
        "x1x3": a3,
        "x1x1": -(a1 * a2 + a1 * a3 + 2 * a2 * a3),
    }
    c2 = {
        "x1x1": (a1 + a3) * a2,
        "x3x3": (a1 + a3) * a2,
        "x1x3": -(a1 + a3),
        "x1x2": a1,
        "x2x3": a3,
        "x2x2": -(a1 * a2 + 2 * a1 * a3 + a2 * a3),
    }
    return c1, c2


def _eval_quadratic_form(coeffs, x1, x2, x3):
    pieces = {
        "x1x1": lambda: x1 * x1,
        "x2x2": lambda: x2 * x2,
        "x3x3": lambda: x3 * x3,
        "x1x2": lambda: x1 * x2,
        "x1x3": lambda: x1 * x3,
        "x2x3": lambda: x2 * x3,
    }
    total = None
    for key, c in coeffs.items():
        term = pieces[key]() * c
        total = term if total is None else total + term
    return total


def residual(a: AParams, x) -> tuple:
    """Exact (or interval) values of the two Einstein equations at a metric.

    Any mix of rational, quadratic-surd, and interval components is accepted;
    intervals force the whole evaluation into interval arithmetic.
    """
    if isinstance(x, MetricTriple):
        x1, x2, x3 = x.as_tuple()
    else:
        x1, x2, x3 = x
    if any(isinstance(v, Interval) for v in (x1, x2, x3)):
        x1, x2, x3 = (
            v if isinstance(v, Interval) else _enclose_scalar(v) for v in (x1, x2, x3)
        )
    c1, c2 = system_coefficients(a)
    return (
        _eval_quadratic_form(c1, x1, x2, x3),
        _eval_quadratic_form(c2, x1, x2, x3),
    )


def _enclose_scalar(v):
    if isinstance(v, QuadExt):
        return v.enclosure(Fraction(1, 10**40))
    return Interval.point(Fraction(v))


def einstein_system_x3_normalized(a: AParams) -> tuple[BivarPoly, BivarPoly]:
    """E1, E2 with x3 := 1 as bivariate polynomials in (x, y) = (x1, x2)."""
    c1, c2 = system_coefficients(a)

    def build(c):
        return BivarPoly(
            {
                (0, 2): c["x2x2"],
                (0, 0): c["x3x3"],
                (0, 1): c["x2x3"],
                (1, 1): c["x1x2"],
                (1, 0): c["x1x3"],
                (2, 0): c["x1x1"],
            }
        )

    return build(c1), build(c2)


# -- internal solution bookkeeping -------------------------------------------


@dataclass(frozen=True)
class EinsteinSolution:
    """One homothety class, normalized to x3 = 1, with its certificate.

    `certificate` is always 'exact-zero': exact components satisfy the system
    identically, and enclosure components carry an algebraic proof (gcd of
    the eliminant factor with the residual numerator) that the enclosed
    point is an exact common root.
    """

    metric: MetricTriple
    multiplicity: int
    certificate: str = "exact-zero"
    isometric_with: tuple[int, ...] = ()
    _refiner: Optional[Callable] = field(default=None, repr=False, compare=False)

    def refined(self, width) -> MetricTriple:
        """Re-derive the metric enclosure at a smaller width (exact kinds pass through)."""
        if self._refiner is None:
            return self.metric
        return self._refiner(Fraction(width))


class _Candidate:
    """(x1, x2) before packaging: exact values or a refinable enclosure pair."""

    def __init__(self, x1, x2, multiplicity, refiner=None):
        self.x1 = x1
        self.x2 = x2
        self.multiplicity = multiplicity
        self.refiner = refiner  # width -> (x1_iv, x2_iv)

    def enclosures(self, width) -> tuple[Interval, Interval]:
        if self.refiner is not None:
            return self.refiner(width)
        return (_enclose_scalar2(self.x1, width), _enclose_scalar2(self.x2, width))

    def sort_key(self):
        e1, e2 = self.enclosures(Fraction(1, 10**12))
        return (e1.lo, e2.lo)


def _enclose_scalar2(v, width) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, QuadExt):
        return v.enclosure(width)
    return Interval.point(Fraction(v))


def _exact_sign(v) -> int:
    if isinstance(v, QuadExt):
        return v.sign()
    return (v > 0) - (v < 0)


def _quadratic_roots_exact(e2: Fraction, e1, e0):
    """Roots of e2 y^2 + e1 y + e0 with rational or single-surd coefficients.

    Returns a list of exact values (possibly empty for a negative
    discriminant) and a flag marking a double root.
    """
    disc = e1 * e1 - 4 * e2 * e0
    s = _exact_sign(disc)
    if s < 0:
        return [], False
    if s == 0:
        return [-e1 / (2 * e2)], True
    if isinstance(disc, QuadExt):
        from .exactnum import sqrt_in_field

        root = sqrt_in_field(disc, disc.d)
        if root is None:
            raise CertificationFailure(
                "discriminant sign is certified but its square root leaves the field"
            )
    else:
        root = rational_sqrt(disc)
        if root is None:
            root = QuadExt.sqrt(disc)
    return [(-e1 + root) / (2 * e2), (-e1 - root) / (2 * e2)], False


def solve(a: AParams, width=DEFAULT_WIDTH) -> list[EinsteinSolution]:
    """All positive Einstein metrics of the space, one per homothety class.

    Every returned solution satisfies both equations exactly (see
    EinsteinSolution.certificate); enclosure components are refined to at
    most `width`. The count is at most 4.
    """
    width = Fraction(width)
    e1p, e2p = einstein_system_x3_normalized(a)
    elim = resultant_y(e1p, e2p)
    if elim.is_zero:
        raise DegenerateSystem("resultant vanished identically")

    ey1 = e1p.coeffs_in_y()  # [e0(x), e1(x), e2]
    ey2 = e2p.coeffs_in_y()
    p2 = ey1[2].coeffs[0]
    q2 = ey2[2].coeffs[0]
    # q2*E1 - p2*E2 is linear in y: beta(x) * y + gamma(x)
    beta = ey1[1].scale(q2) - ey2[1].scale(p2)
    gamma = ey1[0].scale(q2) - ey2[0].scale(p2)

    candidates: list[_Candidate] = []
    for g, mult in elim.square_free_decomposition():
        g = g.monic()
        for rho in g.rational_roots():
            g = g // UniPoly((-rho, 1))
            if rho > 0:
                candidates.extend(_solutions_at_rational(rho, mult, beta, gamma, ey1))
        # what remains of g has no rational roots
        if g.degree == 2:
            for alpha in _quadratic_field_roots(g):
                if alpha.sign() > 0:
                    cand = _solution_at_quadext(alpha, mult, beta, gamma)
                    if cand is not None:
                        candidates.append(cand)
        elif g.degree >= 3:
            for iv in isolate_real_roots(g):
                candidates.extend(
                    _solutions_at_interval(g, iv, mult, beta, gamma, ey1, width)
                )

    for c in candidates:
        _assert_residual_zero(a, c)

    candidates.sort(key=_Candidate.sort_key)
    solutions = _package(candidates, width)
    if len(solutions) > 4:
        raise WallachError(
            f"internal invariant violated: {len(solutions)} homothety classes found"
        )
    return _flag_isometric(a, solutions, width)


def count(a: AParams, width=DEFAULT_WIDTH) -> int:
    """Number of homothety classes of Einstein metrics, exactly."""
    return len(solve(a, width))


def _solutions_at_rational(rho: Fraction, mult, beta, gamma, ey1):
    bv = beta(rho)
    if bv != 0:
        y = -gamma(rho) / bv
        if not _verify_exact(ey1, rho, y):
            raise CertificationFailure(f"eliminant root {rho} produced no common root")
        return [_Candidate(rho, y, mult)] if y > 0 else []
    if gamma(rho) != 0:
        raise CertificationFailure(
            f"linear combination degenerated inconsistently at {rho}"
        )
    # both quadratics are proportional at rho: solve e2 y^2 + e1 y + e0 = 0
    e2 = ey1[2].coeffs[0]
    roots, double = _quadratic_roots_exact(e2, ey1[1](rho), ey1[0](rho))
    out = []
    per_root_mult = mult if (double or len(roots) < 2) else max(1, mult // 2)
    for y in roots:
        if _exact_sign(y) > 0:
            out.append(_Candidate(rho, y, per_root_mult))
    return out


def _verify_exact(ey1, x_val, y_val) -> bool:
    val = ey1[2].coeffs[0] * y_val * y_val + ey1[1](x_val) * y_val + ey1[0](x_val)
    return _exact_sign(val) == 0 if isinstance(val, QuadExt) else val == 0


def _quadratic_field_roots(g: UniPoly):
    """Real roots of an irreducible rational quadratic, as exact surds."""
    c0, c1, c2 = g.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc <= 0:
        return []  # complex pair (disc == 0 impossible: g is square-free)
    root = QuadExt.sqrt(disc)
    if not isinstance(root, QuadExt):
        raise CertificationFailure("square-free quadratic factor had a rational root")
    return [(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)]


def _solution_at_quadext(alpha: QuadExt, mult, beta, gamma):
    bv = beta(alpha)
    if _exact_sign(bv) == 0:
        # beta has degree 1 with a rational root; a surd alpha cannot hit it
        raise CertificationFailure("linear coefficient vanished at an irrational root")
    y = -gamma(alpha) / bv
    if _exact_sign(y) <= 0:
        return None
    return _Candidate(alpha, y, mult)


def _solutions_at_interval(g, iv, mult, beta, gamma, ey1, width):
    """Solutions whose x1 is the (irrational) root of g isolated by iv.

    beta is linear with a rational root, so beta(alpha) != 0 here and the
    partner coordinate is x2 = -gamma(alpha)/beta(alpha). Exactness of the
    residual is certified by checking that alpha is a root of the cleared
    substitution polynomial via a gcd with g.
    """
    chain = sturm_chain(g)
    if sturm_count(chain, iv.lo, iv.hi) != 1:
        raise CertificationFailure("isolating interval lost its root")
    if iv.lo <= 0:
        iv = refine_to(g, iv, iv.width / 2)
        while iv.lo <= 0 < iv.hi:
            iv = refine_to(g, iv, iv.width / 2)
        if iv.hi <= 0:
            return []

    # reject x2 = 0 exactly: gamma(alpha) == 0 iff gcd(g, gamma) has the root
    gg = g.gcd(gamma)
    if gg.degree > 0 and _counts_root(gg, iv):
        return []

    # certify that E1(alpha, -gamma/beta) == 0:
    # N = e2 * gamma^2 - e1 * gamma * beta + e0 * beta^2 must vanish at alpha
    n_poly = (
        gamma * gamma * ey1[2]
        - gamma * beta * ey1[1]
        + beta * beta * ey1[0]
    )
    gn = g.gcd(n_poly)
    if gn.degree == 0 or not _counts_root(gn, iv):
        raise CertificationFailure("resultant root failed back-substitution")

    def refiner(w, _g=g, _iv=[iv]):
        x_iv = _iv[0]
        while True:
            y_iv = _interval_partner(beta, gamma, x_iv)
            if y_iv is not None and y_iv.width <= w and x_iv.width <= w:
                _iv[0] = x_iv
                return x_iv, y_iv
            x_iv = refine_to(_g, x_iv, x_iv.width / 4)

    # x2 = -gamma(alpha)/beta(alpha) is a fixed nonzero real (the zero case
    # was rejected above), so some refinement width makes its sign definite
    w = width
    while True:
        x_iv, y_iv = refiner(w)
        if y_iv.lo > 0:
            break
        if y_iv.hi < 0:
            return []
        w = w / 10**6
    return [_Candidate(x_iv, y_iv, mult, refiner=refiner)]


def _counts_root(divisor: UniPoly, iv: Interval) -> bool:
    if iv.lo == iv.hi:
        return divisor(iv.lo) == 0
    if divisor(iv.lo) == 0 or divisor(iv.hi) == 0:
        return False  # endpoints are never the isolated root
    return sturm_count(sturm_chain(divisor), iv.lo, iv.hi) == 1


def _interval_partner(beta, gamma, x_iv) -> Optional[Interval]:
    bv = beta(x_iv)
    if isinstance(bv, Fraction):
        bv = Interval.point(bv)
    if bv.lo <= 0 <= bv.hi:
        return None
    gv = gamma(x_iv)
    if isinstance(gv, Fraction):
        gv = Interval.point(gv)
    return -gv / bv


def _assert_residual_zero(a: AParams, c: _Candidate):
    """Defense in depth: exact candidates must satisfy the full system exactly."""
    if isinstance(c.x1, Interval):
        r1, r2 = residual(a, (c.x1, c.x2, Fraction(1)))
        if not (r1.contains(0) and r2.contains(0)):
            raise CertificationFailure("enclosure residual excludes zero")
        return
    r1, r2 = residual(a, (c.x1, c.x2, Fraction(1)))
    if _exact_sign(r1) != 0 or _exact_sign(r2) != 0:
        raise CertificationFailure("exact candidate has nonzero residual")


def _package(candidates, width) -> list[EinsteinSolution]:
    out = []
    for c in candidates:
        if c.refiner is not None:
            x_iv, y_iv = c.enclosures(width)

            def make_refiner(cand):
                def refine(w):
                    xi, yi = cand.enclosures(w)
                    return MetricTriple(xi, yi, Fraction(1))

                return refine

            metric = MetricTriple(x_iv, y_iv, Fraction(1))
            out.append(
                EinsteinSolution(metric, c.multiplicity, _refiner=make_refiner(c))
            )
        else:
            metric = MetricTriple(c.x1, c.x2, Fraction(1))
            out.append(EinsteinSolution(metric, c.multiplicity))
    return out


# -- isometry flagging --------------------------------------------------------


def _a_fixing_permutations(a: AParams):
    t = a.as_tuple()
    perms = []
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        if tuple(t[i] for i in perm) == t:
            perms.append(perm)
    return perms


def _image_enclosure(sol: EinsteinSolution, perm, width) -> tuple[Interval, Interval]:
    m = sol.refined(width / 4) if sol._refiner is not None else sol.metric
    triple = [_enclose_scalar2(v, width / 4) for v in m.as_tuple()]
    u = [triple[i] for i in perm]
    return (u[0] / u[2], u[1] / u[2])


def _flag_isometric(a: AParams, solutions, width) -> list[EinsteinSolution]:
    perms = _a_fixing_permutations(a)
    if not perms or len(solutions) < 2:
        return solutions
    linked = {i: set() for i in range(len(solutions))}
    for i, sol in enumerate(solutions):
        for perm in perms:
            match = _match_image(solutions, i, perm, width)
            if match is not None and match != i:
                linked[i].add(match)
                linked[match].add(i)
    return [
        EinsteinSolution(
            s.metric,
            s.multiplicity,
            s.certificate,
            tuple(sorted(linked[i])),
            s._refiner,
        )
        for i, s in enumerate(solutions)
    ]


def _match_image(solutions, idx, perm, width) -> Optional[int]:
    """Index of the solution equal to the permuted image of solutions[idx].

    The image of a solution under an a-fixing permutation is again a
    solution, so intersection testing against refined enclosures pins it
    down exactly once the enclosures are narrow enough.
    """
    w = min(Fraction(width), Fraction(1, 10**30))
    for _ in range(6):
        img = _image_enclosure(solutions[idx], perm, w)
        hits = []
        for j, sol in enumerate(solutions):
            m = sol.refined(w / 4) if sol._refiner is not None else sol.metric
            r1, r2 = (_enclose_scalar2(v, w / 4) for v in m.ratios())
            if img[0].intersects(r1) and img[1].intersects(r2):
                hits.append(j)
        if len(hits) == 1:
            return hits[0]
        if not hits:
            return None
        w = w / 10**6
    raise CertificationFailure("could not separate permutation images of solutions")


# -- closed forms -------------------------------------------------------------


def t_family_space(t: int) -> AParams:
    """Parameters of the space with (k, l, m) = (t^2+1, t^2+1, 2t)."""
    if t < 1:
        raise BadParam("t must be a positive integer")
    denom = 4 * t * (t + 1)
    return AParams(
        Fraction(t * t + 1, denom), Fraction(t * t + 1, denom), Fraction(1, 2 * (t + 1))
    )


def closed_forms_t_family(t: int) -> list[MetricTriple]:
    """The three closed-form Einstein metrics of the (t^2+1, t^2+1, 2t) space.

    For t >= 2: the rational metric (t+1, t+1, 2t) and the conjugate surd
    pair with components 2t^2 +- (t^2-1) sqrt(t/(t+2)); the surd pair is an
    isometric couple (swap the first two components).
    """
    if not isinstance(t, int) or t < 2:
        raise BadParam("the three-metric family needs an integer t >= 2")
    surd = QuadExt.make(0, t * t - 1, Fraction(t, t + 2))
    third = Fraction(2 * t * (t * t + 1), t + 1)
    return [
        MetricTriple(Fraction(t + 1), Fraction(t + 1), Fraction(2 * t)),
        MetricTriple(2 * t * t + surd, 2 * t * t - surd, third),
        MetricTriple(2 * t * t - surd, 2 * t * t + surd, third),
    ]


def boundary_metric(k: int) -> MetricTriple:
    """Unique Einstein metric of the boundary space a = (1/2, 1/(2k), 1/(2k)).

    Index-aligned with that parameter order: (2k, k+1, k+1).
    """
    if k < 2:
        raise BadParam("boundary family needs k >= 2")
    return MetricTriple(Fraction(2 * k), Fraction(k + 1), Fraction(k + 1))


def boundary_space(k: int) -> AParams:
    if k < 2:
        raise BadParam("boundary family needs k >= 2")
    return AParams(
        Fraction(1, 2), Fraction(1, 2 * k), Fraction(1, 2 * k), boundary=True
    )
