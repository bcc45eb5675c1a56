"""Domain model of generalized Wallach spaces and the catalog data.

A space is described by the exact rational triple (a1, a2, a3) in the cube
(0, 1/2]^3 together with effective dimension weights (d1, d2, d3). The
catalog encodes the fifteen families of spaces with simple isometry group
plus their expected region assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import BadLine, BadParams, BoundaryInput, IndistinguishableAtTolerance
from .exactnum import Interval, QuadExt

Scalar = Union[Fraction, QuadExt, Interval]

CATALOG_FIXTURE_VERSION = "table-fixtures-v1"


@dataclass(frozen=True)
class AParams:
    """Exact parameter triple; each a_i in (0, 1/2], the value 1/2 only with boundary=True."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    boundary: bool = False

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        half = Fraction(1, 2)
        for v in (self.a1, self.a2, self.a3):
            if v <= 0:
                raise BadParams(f"a_i must be positive, got {v}")
            if v > half:
                raise BadParams(f"a_i must be <= 1/2, got {v}")
            if v == half and not self.boundary:
                raise BoundaryInput("a_i = 1/2 requires the explicit boundary flag")
        if self.boundary and half not in (self.a1, self.a2, self.a3):
            raise BadParams("boundary flag set but no a_i equals 1/2")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3)

    def permuted(self, perm: tuple[int, int, int]) -> "AParams":
        t = self.as_tuple()
        return AParams(t[perm[0]], t[perm[1]], t[perm[2]], boundary=self.boundary)

    def min(self) -> Fraction:
        return min(self.as_tuple())

    def __iter__(self):
        return iter(self.as_tuple())


@dataclass(frozen=True)
class Table1Line:
    line: int
    params: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class SOTripleProvenance:
    k: int
    l: int
    m: int


@dataclass(frozen=True)
class Abstract:
    pass


Provenance = Union[Table1Line, SOTripleProvenance, Abstract]


@dataclass(frozen=True)
class GWSpace:
    params: AParams
    d: tuple[Fraction, Fraction, Fraction]
    provenance: Provenance

    def __post_init__(self):
        d = tuple(Fraction(v) for v in self.d)
        if any(v <= 0 for v in d):
            raise BadParams("dimension weights must be positive")
        object.__setattr__(self, "d", d)


def abstract_space(a: AParams) -> GWSpace:
    """Space from bare parameters; effective weights d_i := 1/a_i.

    The normalized flow depends on the weights only through ratios and
    a_i is proportional to 1/d_i, so this choice reproduces the dynamics
    of any space with these parameters.
    """
    return GWSpace(a, tuple(1 / v for v in a.as_tuple()), Abstract())


# -- Table 1: the fifteen families ------------------------------------------


def _line1_like(kv: int, lv: int, mv: int, shift: int, scale: int):
    denom = 2 * (kv + lv + mv + shift)
    d = (scale * kv * lv, scale * kv * mv, scale * lv * mv)
    a = (Fraction(mv, denom), Fraction(lv, denom), Fraction(kv, denom))
    return d, a


def catalog_space(line: int, params=None) -> GWSpace:
    """Exact (a, d) for a Table 1 line; family lines 1-5 need parameters.

    Lines 1-3 take a positive integer triple (k, l, m); line 4 takes l >= 2,
    line 5 takes l >= 4. The returned a_i/d_i pairing follows Table 1, so
    a_i * d_i is the same for all i.
    """
    if not isinstance(line, int) or not 1 <= line <= 15:
        raise BadLine(f"catalog line must be 1..15, got {line!r}")

    if line in (1, 2, 3):
        if params is None:
            raise BadParams(f"line {line} is a family; needs (k, l, m)")
        try:
            kv, lv, mv = (int(v) for v in params)
        except (TypeError, ValueError):
            raise BadParams(f"line {line} needs an integer triple, got {params!r}") from None
        if min(kv, lv, mv) < 1:
            raise BadParams("k, l, m must be positive integers")
        shift = {1: -2, 2: 0, 3: 1}[line]
        scale = {1: 1, 2: 2, 3: 4}[line]
        d, a = _line1_like(kv, lv, mv, shift, scale)
        boundary = Fraction(1, 2) in a
        if boundary and line != 1:
            raise BadParams("unexpected boundary value off line 1")
        if boundary and sorted((kv, lv, mv))[:2] != [1, 1]:
            raise BadParams("line 1 boundary requires two of k, l, m equal to 1")
        return GWSpace(
            AParams(*a, boundary=boundary),
            d,
            Table1Line(line, (kv, lv, mv)),
        )

    if line in (4, 5):
        if params is None:
            raise BadParams(f"line {line} is a family; needs parameter l")
        lv = int(params if not isinstance(params, (tuple, list)) else params[0])
        if line == 4:
            if lv < 2:
                raise BadParams("line 4 requires l >= 2")
            d = (lv * (lv - 1), lv * (lv + 1), lv * lv - 1)
            a = (Fraction(lv + 1, 4 * lv), Fraction(lv - 1, 4 * lv), Fraction(1, 4))
        else:
            if lv < 4:
                raise BadParams("line 5 requires l >= 4")
            d = (2 * (lv - 1), 2 * (lv - 1), (lv - 1) * (lv - 2))
            a = (
                Fraction(lv - 2, 4 * (lv - 1)),
                Fraction(lv - 2, 4 * (lv - 1)),
                Fraction(1, 2 * (lv - 1)),
            )
        return GWSpace(AParams(*a), d, Table1Line(line, (lv,)))

    if params is not None:
        raise BadParams(f"line {line} takes no parameters")
    d, a = _FIXED_LINES[line]
    return GWSpace(AParams(*a), d, Table1Line(line))


_FIXED_LINES = {
    6: ((16, 16, 24), (Fraction(1, 4), Fraction(1, 4), Fraction(1, 6))),
    7: ((16, 16, 16), (Fraction(1, 6), Fraction(1, 6), Fraction(1, 6))),
    8: ((14, 28, 12), (Fraction(1, 4), Fraction(1, 8), Fraction(7, 24))),
    9: ((32, 32, 32), (Fraction(2, 9), Fraction(2, 9), Fraction(2, 9))),
    10: ((30, 40, 24), (Fraction(2, 9), Fraction(1, 6), Fraction(5, 18))),
    11: ((35, 35, 35), (Fraction(5, 18), Fraction(5, 18), Fraction(5, 18))),
    12: ((64, 64, 48), (Fraction(1, 5), Fraction(1, 5), Fraction(4, 15))),
    13: ((64, 64, 64), (Fraction(4, 15), Fraction(4, 15), Fraction(4, 15))),
    14: ((8, 8, 20), (Fraction(5, 18), Fraction(5, 18), Fraction(1, 9))),
    15: ((8, 8, 8), (Fraction(1, 9), Fraction(1, 9), Fraction(1, 9))),
}

# Expected region per catalog line, verified against the exact sign of the
# classifying polynomial. Two printed table cells fail that verification and
# are stored here in corrected form: line 4 lies in O3 (its l=2 member is the
# same parameter point as the SO(6)/SO(3)xSO(2)xSO(1) space, placed in O3 by
# the source's own small-space analysis) and line 5 lies in O1 (its members
# have a1+a2+a3 = 1/2 exactly, which pins them to the component of
# (1/6,1/6,1/6); they are also classified elsewhere as carrying four Einstein
# metrics, impossible in O3).
EXPECTED_REGION = {
    1: "Mixed",
    2: "O1",
    3: "O1",
    4: "O3",
    5: "O1",
    6: "O3",
    7: "O1",
    8: "O3",
    9: "O1",
    10: "O3",
    11: "O2",
    12: "O3",
    13: "O2",
    14: "O3",
    15: "O1",
}


def expected_region(line: int) -> str:
    """Catalog region assignment for a Table 1 line ('Mixed' for line 1)."""
    if not isinstance(line, int) or not 1 <= line <= 15:
        raise BadLine(f"catalog line must be 1..15, got {line!r}")
    return EXPECTED_REGION[line]


def catalog_to_json() -> list[dict]:
    """Serializable description of all fifteen catalog lines."""
    from .exactnum import format_rational

    rows = []
    samples = {
        1: (("k", "l", "m"), (3, 3, 3)),
        2: (("k", "l", "m"), (1, 1, 1)),
        3: (("k", "l", "m"), (1, 1, 1)),
        4: (("l",), (2,)),
        5: (("l",), (4,)),
    }
    for line in range(1, 16):
        if line in samples:
            names, vals = samples[line]
            space = catalog_space(line, vals if len(vals) > 1 else vals[0])
            entry = {
                "line": line,
                "family_parameters": list(names),
                "sample_parameters": list(vals),
            }
        else:
            space = catalog_space(line)
            entry = {"line": line, "family_parameters": [], "sample_parameters": []}
        entry["a"] = [format_rational(v) for v in space.params.as_tuple()]
        entry["d"] = [format_rational(v) for v in space.d]
        entry["expected_region"] = expected_region(line)
        rows.append(entry)
    return rows


# -- metrics ----------------------------------------------------------------


def _positive(v: Scalar) -> bool:
    if isinstance(v, Interval):
        return v.lo > 0
    if isinstance(v, QuadExt):
        return v.sign() > 0
    return Fraction(v) > 0


def _as_scalar(v) -> Scalar:
    if isinstance(v, (Interval, QuadExt)):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class MetricTriple:
    """Positive invariant metric (x1, x2, x3); components exact or certified enclosures."""

    x1: Scalar
    x2: Scalar
    x3: Scalar

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            v = _as_scalar(getattr(self, name))
            object.__setattr__(self, name, v)
            if not _positive(v):
                raise BadParams(f"metric component {name} not certified positive: {v}")

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)

    def scale(self, factor) -> "MetricTriple":
        return MetricTriple(self.x1 * factor, self.x2 * factor, self.x3 * factor)

    def ratios(self) -> tuple[Scalar, Scalar]:
        """Homothety invariants (x1/x3, x2/x3)."""
        return (_div(self.x1, self.x3), _div(self.x2, self.x3))

    def normalized(self) -> "MetricTriple":
        r1, r2 = self.ratios()
        return MetricTriple(r1, r2, Fraction(1))

    def enclosure(self, width=Fraction(1, 10**30)) -> tuple[Interval, Interval, Interval]:
        return tuple(_enclose(v, width) for v in self.as_tuple())

    def permuted(self, perm: tuple[int, int, int]) -> "MetricTriple":
        t = self.as_tuple()
        return MetricTriple(t[perm[0]], t[perm[1]], t[perm[2]])

    def __iter__(self):
        return iter(self.as_tuple())


def _enclose(v: Scalar, width) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, QuadExt):
        return v.enclosure(width)
    return Interval.point(v)


def _div(u: Scalar, v: Scalar) -> Scalar:
    if isinstance(u, Interval) or isinstance(v, Interval):
        return _enclose(u, Fraction(1, 10**40)) / _enclose(v, Fraction(1, 10**40))
    return u / v


def _ratio_compare(x: Scalar, y: Scalar, tolerance: Fraction):
    """'eq', 'ne', or 'unknown' for one ratio coordinate."""
    ix, iy = isinstance(x, Interval), isinstance(y, Interval)
    if not ix and not iy:
        return "eq" if x == y else "ne"
    ex = _enclose(x, tolerance / 4)
    ey = _enclose(y, tolerance / 4)
    if not ex.intersects(ey):
        return "ne"
    if ex.hull(ey).width <= tolerance:
        return "eq"
    return "unknown"


def homothety_classes(metrics, tolerance=Fraction(1, 10**20)) -> list[list[int]]:
    """Partition metrics into homothety classes; returns index lists.

    Exact components compare exactly. Interval components are merged only
    when the joint enclosure is narrower than `tolerance` and separated only
    when enclosures are disjoint; anything in between raises
    IndistinguishableAtTolerance so the caller can refine and retry.
    """
    tolerance = Fraction(tolerance)
    ratios = [m.ratios() for m in metrics]
    classes: list[list[int]] = []
    for idx, (r1, r2) in enumerate(ratios):
        placed = False
        for cls in classes:
            p1, p2 = ratios[cls[0]]
            c1 = _ratio_compare(r1, p1, tolerance)
            c2 = _ratio_compare(r2, p2, tolerance)
            if c1 == "eq" and c2 == "eq":
                cls.append(idx)
                placed = True
                break
            if c1 == "ne" or c2 == "ne":
                continue
            raise IndistinguishableAtTolerance(
                f"metrics {cls[0]} and {idx} cannot be separated or merged at {tolerance}"
            )
        if not placed:
            classes.append([idx])
    return classes
