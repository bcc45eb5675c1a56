"""Normalized Ricci flow on the three-parameter metric family.

The field is dx_i/dt = -2 x_i (r_i - S) where r_i are the principal Ricci
values and S is the d-weighted mean of the r_i, which makes the weighted
volume prod x_i^{d_i} an exact first integral. Zeros of the field at fixed
volume are exactly the Einstein metrics, which ties this module to the
polynomial solver: the test suite pins the r_i formula to the Einstein system
by an exact denominator-clearing cross-validation.

Exact rational inputs run through exact arithmetic (used by the residual and
conservation identities); numerical work (Jacobian, eigenvalues, trajectory
integration) runs in mpmath at >= 50 significant digits, seeded from
certified enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .core import GWSpace, MetricTriple
from .errors import BadBounds, NonPositiveMetric, NonPositiveStart, StepTooLarge
from .exactnum import Interval, QuadExt

FLOW_DPS = 50
JACOBIAN_DPS = 60
DEGENERACY_THRESHOLD = Fraction(1, 10**12)

STABLE_NODE = "StableNode"
UNSTABLE_NODE = "UnstableNode"
SADDLE = "Saddle"
FOCUS = "Focus"
DEGENERATE = "Degenerate"


def _mpf_q(q) -> mp.mpf:
    q = Fraction(q)
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


def _numeric_triple(x):
    """Midpoint mpf seeds for any mix of exact and enclosure components."""
    out = []
    for v in x:
        if isinstance(v, Interval):
            out.append(_mpf_q(v.mid))
        elif isinstance(v, QuadExt):
            out.append(_mpf_q(v.enclosure(Fraction(1, 10**45)).mid))
        else:
            out.append(_mpf_q(v))
    return out


def _params_like(space: GWSpace, sample):
    a = space.params.as_tuple()
    d = space.d
    if isinstance(sample, Fraction):
        return list(a), list(d)
    return [_mpf_q(v) for v in a], [_mpf_q(v) for v in d]


def ricci_components(space: GWSpace, x):
    """Principal Ricci values (r1, r2, r3) of the metric x on the space.

    Exact for rational inputs; mpf otherwise.
    """
    xs = _as_triple(x)
    if any(not _is_positive(v) for v in xs):
        raise NonPositiveMetric(f"metric must be positive, got {xs}")
    a, _ = _params_like(space, xs[0])
    out = []
    for i in range(3):
        j, k = ((i + 1) % 3, (i + 2) % 3)
        xi, xj, xk = xs[i], xs[j], xs[k]
        out.append(
            1 / (2 * xi)
            + a[i] / 2 * (xi / (xj * xk) - xj / (xi * xk) - xk / (xi * xj))
        )
    return tuple(out)


def mean_scalar(space: GWSpace, r, like=None):
    _, d = _params_like(space, like if like is not None else r[0])
    return sum(dv * rv for dv, rv in zip(d, r)) / sum(d)


def vector_field(space: GWSpace, x):
    """dx_i/dt = -2 x_i (r_i - S); zeros at fixed volume are the Einstein metrics."""
    xs = _as_triple(x)
    r = ricci_components(space, xs)
    s_bar = mean_scalar(space, r, like=xs[0])
    return tuple(-2 * xi * (ri - s_bar) for xi, ri in zip(xs, r))


def weighted_volume(space: GWSpace, x):
    xs = _as_triple(x)
    if isinstance(xs[0], Fraction) and all(v.denominator == 1 for v in space.d):
        return xs[0] ** int(space.d[0]) * xs[1] ** int(space.d[1]) * xs[2] ** int(space.d[2])
    xs = [v if isinstance(v, mp.mpf) else _mpf_q(v) for v in xs]
    d = [_mpf_q(v) for v in space.d]
    return xs[0] ** d[0] * xs[1] ** d[1] * xs[2] ** d[2]


def _as_triple(x):
    if isinstance(x, MetricTriple):
        return list(x.as_tuple())
    return list(x)


def _is_positive(v):
    if isinstance(v, Interval):
        return v.lo > 0
    if isinstance(v, QuadExt):
        return v.sign() > 0
    return v > 0


# -- certified volume normalization ------------------------------------------


def volume_normalize(space: GWSpace, metric: MetricTriple, width=Fraction(1, 10**35)) -> MetricTriple:
    """Rescale a metric onto the volume-1 surface, with certified enclosures.

    All powers are rational powers of positive rational intervals, so the
    result is a rigorous enclosure of the exact normalized metric.
    """
    width = Fraction(width)
    enc = [_enclose(v) for v in metric.as_tuple()]
    d = [Fraction(v) for v in space.d]
    total = sum(d)
    vol = enc[0].pow_rational(d[0]) * enc[1].pow_rational(d[1]) * enc[2].pow_rational(d[2])
    lam = vol.pow_rational(Fraction(-1) / total)
    out = [e * lam for e in enc]
    return MetricTriple(*out)


def _enclose(v) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, QuadExt):
        return v.enclosure(Fraction(1, 10**45))
    return Interval.point(Fraction(v))


# -- linearization ------------------------------------------------------------


@dataclass(frozen=True)
class EquilibriumReport:
    metric: MetricTriple  # volume-normalized certified enclosure
    jacobian: tuple  # ((j11, j12), (j21, j22)) as mpf
    eigenvalues: tuple  # pair of mpf (real case) or mpc (focus)
    classification: str

    def eigenvalue_floats(self):
        return tuple(complex(e) for e in self.eigenvalues)


def _ricci_partials(a, x):
    """d r_i / d x_m as a 3x3 table of closed-form rational expressions."""
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        j, k = ((i + 1) % 3, (i + 2) % 3)
        xi, xj, xk = x[i], x[j], x[k]
        ai = a[i]
        out[i][i] = -1 / (2 * xi**2) + ai / 2 * (
            1 / (xj * xk) + xj / (xi**2 * xk) + xk / (xi**2 * xj)
        )
        out[i][j] = ai / 2 * (-xi / (xj**2 * xk) - 1 / (xi * xk) + xk / (xi * xj**2))
        out[i][k] = ai / 2 * (-xi / (xj * xk**2) + xj / (xi * xk**2) - 1 / (xi * xj))
    return out


def field_jacobian_full(space: GWSpace, x):
    """3x3 Jacobian of the unreduced field, in the arithmetic of the inputs."""
    xs = _as_triple(x)
    a, d = _params_like(space, xs[0])
    dsum = sum(d)
    r = ricci_components(space, xs)
    s_bar = sum(dv * rv for dv, rv in zip(d, r)) / dsum
    dr = _ricci_partials(a, xs)
    ds = [sum(d[jj] * dr[jj][m] for jj in range(3)) / dsum for m in range(3)]
    jac = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for m in range(3):
            val = -2 * xs[i] * (dr[i][m] - ds[m])
            if i == m:
                val = val - 2 * (r[i] - s_bar)
            jac[i][m] = val
    return jac


def reduce_and_linearize(space: GWSpace, x_star: MetricTriple, dps: int = JACOBIAN_DPS) -> EquilibriumReport:
    """Classify an equilibrium through the reduced (x1, x2) chart.

    The volume-1 surface is parametrized by (x1, x2) with
    x3 = (x1^d1 x2^d2)^(-1/d3); the 2x2 Jacobian of the reduced field is
    assembled from closed-form partials of the Ricci expressions plus the
    chart's chain rule, then classified by eigenvalue signs.
    """
    normalized = volume_normalize(space, x_star)
    with mp.workdps(dps):
        xs = _numeric_triple(normalized.as_tuple())
        _, d = _params_like(space, xs[0])
        full = field_jacobian_full(space, xs)
        j = [[mp.mpf(0)] * 2 for _ in range(2)]
        for i in range(2):
            for m in range(2):
                chart = -(d[m] / d[2]) * (xs[2] / xs[m])
                j[i][m] = full[i][m] + full[i][2] * chart
        tr = j[0][0] + j[1][1]
        det = j[0][0] * j[1][1] - j[0][1] * j[1][0]
        disc = tr * tr - 4 * det
        # discriminants that vanish identically (symmetric star nodes) show up
        # as numerical noise; anything this far below the matrix scale is zero
        scale = max(abs(tr) ** 2, abs(4 * det), mp.mpf(1))
        eps = scale * mp.mpf(10) ** (-(dps - 20))
        if disc > eps:
            sq = mp.sqrt(disc)
            eigs = ((tr + sq) / 2, (tr - sq) / 2)
            cls = _classify_real(eigs)
        elif disc < -eps:
            sq = mp.sqrt(-disc)
            eigs = (mp.mpc(tr / 2, sq / 2), mp.mpc(tr / 2, -sq / 2))
            cls = FOCUS
        else:
            lam = tr / 2
            eigs = (lam, lam)
            cls = _classify_real(eigs)
        report = EquilibriumReport(
            normalized,
            ((j[0][0], j[0][1]), (j[1][0], j[1][1])),
            eigs,
            cls,
        )
    return report


def _classify_real(eigs) -> str:
    thr = _mpf_q(DEGENERACY_THRESHOLD)
    if any(abs(e) < thr for e in eigs):
        return DEGENERATE
    if eigs[0] > 0 and eigs[1] > 0:
        return UNSTABLE_NODE
    if eigs[0] < 0 and eigs[1] < 0:
        return STABLE_NODE
    return SADDLE


def classify_equilibria(space: GWSpace, width=Fraction(1, 10**30)) -> list[EquilibriumReport]:
    """Solve for all Einstein metrics and classify each as a flow equilibrium."""
    from . import einstein

    reports = []
    for sol in einstein.solve(space.params, width):
        reports.append(reduce_and_linearize(space, sol.metric))
    return reports


# -- trajectory integration ----------------------------------------------------


@dataclass(frozen=True)
class FlowSample:
    t: object
    x: tuple
    v: tuple
    volume: object


@dataclass(frozen=True)
class Trajectory:
    samples: list
    halted: bool  # True if the trajectory left the positive cone early

    def final(self) -> FlowSample:
        return self.samples[-1]


def integrate(
    space: GWSpace,
    x0,
    t_max,
    step,
    dps: int = FLOW_DPS,
    positivity_floor=Fraction(1, 10**8),
    drift_limit=Fraction(1, 10**3),
    sample_every: int = 1,
) -> Trajectory:
    """Classical fourth-order Runge-Kutta on the full 3D field.

    Integration halts with a flag if a component falls below the positivity
    floor (the flow can leave the positive cone in finite time near the
    boundary). A conservation-drift guard aborts when the weighted volume,
    an exact first integral, drifts beyond `drift_limit` relatively: that
    signals a step size too large for the trajectory's stiffness.
    """
    xs0 = _as_triple(x0)
    if any(not _is_positive(v) for v in xs0):
        raise NonPositiveStart(f"starting metric must be positive: {xs0}")
    t_max = Fraction(t_max)
    step = Fraction(step)
    if step <= 0 or t_max <= 0 or step > t_max:
        raise StepTooLarge("need 0 < step <= t_max")
    n_steps = int(t_max / step)
    with mp.workdps(dps):
        h = _mpf_q(step)
        floor = _mpf_q(positivity_floor)
        a, d = _params_like(space, mp.mpf(1))
        dsum = sum(d)

        def field(x):
            r = []
            for i in range(3):
                j, k = ((i + 1) % 3, (i + 2) % 3)
                xi, xj, xk = x[i], x[j], x[k]
                r.append(
                    1 / (2 * xi)
                    + a[i] / 2 * (xi / (xj * xk) - xj / (xi * xk) - xk / (xi * xj))
                )
            s_bar = sum(dv * rv for dv, rv in zip(d, r)) / dsum
            return [-2 * x[i] * (r[i] - s_bar) for i in range(3)]

        def vol(x):
            return x[0] ** d[0] * x[1] ** d[1] * x[2] ** d[2]

        x = [v if isinstance(v, mp.mpf) else _mpf_q(v) for v in _numeric_triple(xs0)]
        v0 = vol(x)
        drift_cap = _mpf_q(drift_limit)
        samples = [FlowSample(mp.mpf(0), tuple(x), tuple(field(x)), v0)]
        halted = False
        t = mp.mpf(0)
        for n in range(n_steps):
            k1 = field(x)
            x2 = [x[i] + h / 2 * k1[i] for i in range(3)]
            if min(x2) <= 0:
                halted = True
                break
            k2 = field(x2)
            x3 = [x[i] + h / 2 * k2[i] for i in range(3)]
            if min(x3) <= 0:
                halted = True
                break
            k3 = field(x3)
            x4 = [x[i] + h * k3[i] for i in range(3)]
            if min(x4) <= 0:
                halted = True
                break
            k4 = field(x4)
            x = [
                x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
                for i in range(3)
            ]
            t = t + h
            if min(x) < floor:
                halted = True
                break
            if (n + 1) % sample_every == 0 or n == n_steps - 1:
                vnow = vol(x)
                if abs(vnow / v0 - 1) > drift_cap:
                    raise StepTooLarge(
                        f"volume drifted by {mp.nstr(abs(vnow / v0 - 1), 5)} at t={mp.nstr(t, 8)}"
                    )
                samples.append(FlowSample(t, tuple(x), tuple(field(x)), vnow))
    return Trajectory(samples, halted)


# -- portrait data ---------------------------------------------------------------


@dataclass(frozen=True)
class PortraitData:
    samples: list  # rows (x1, x2, dx1dt, dx2dt)
    equilibria: list  # EquilibriumReports


def reduced_field(space: GWSpace, u, v, dps: int = FLOW_DPS):
    """Field on the volume-1 chart at (x1, x2) = (u, v)."""
    with mp.workdps(dps):
        _, d = _params_like(space, mp.mpf(1))
        u = u if isinstance(u, mp.mpf) else _mpf_q(Fraction(u))
        v = v if isinstance(v, mp.mpf) else _mpf_q(Fraction(v))
        w = (u ** d[0] * v ** d[1]) ** (-1 / d[2])
        f = vector_field(space, (u, v, w))
    return (f[0], f[1])


def portrait_grid(space: GWSpace, grid_n: int, bounds, dps: int = FLOW_DPS) -> PortraitData:
    """Plot-ready samples of the reduced field on a grid, plus the equilibria.

    `bounds` is (x1_min, x1_max, x2_min, x2_max), strictly positive.
    """
    if grid_n < 2:
        raise BadBounds("grid_n must be at least 2")
    try:
        x1_min, x1_max, x2_min, x2_max = (Fraction(b) for b in bounds)
    except (TypeError, ValueError) as exc:
        raise BadBounds(f"unusable bounds {bounds!r}: {exc}") from None
    if not (0 < x1_min < x1_max and 0 < x2_min < x2_max):
        raise BadBounds("bounds must satisfy 0 < min < max in both coordinates")
    samples = []
    for i in range(grid_n):
        u = x1_min + (x1_max - x1_min) * Fraction(i, grid_n - 1)
        for j in range(grid_n):
            v = x2_min + (x2_max - x2_min) * Fraction(j, grid_n - 1)
            du, dv = reduced_field(space, u, v, dps)
            samples.append((_mpf_q(u), _mpf_q(v), du, dv))
    return PortraitData(samples, classify_equilibria(space))
