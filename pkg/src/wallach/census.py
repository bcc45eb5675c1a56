"""The SO(k+l+m)/SO(k)xSO(l)xSO(m) Diophantine layer.

Region classification for these spaces reduces to the sign of an integer
polynomial G(k,l,m) of degree 12, evaluated here in exact integer
arithmetic through its elementary-symmetric form H(t1,t2,t3). All theorem
bounds are integer comparisons (squares against squares), never floating
square roots.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import AParams, GWSpace, SOTripleProvenance
from .errors import BadParams, BoundaryTriple, WallachError

TABLE_FIXTURE_VERSION = "table3-fixture-v1"

FLAG_ORDER = ("thm2_four", "thm2_two", "prop6_two", "cor3_two")


@dataclass(frozen=True)
class SOTriple:
    """Sorted triple k >= l >= m >= 1 naming SO(k+l+m)/SO(k)xSO(l)xSO(m)."""

    k: int
    l: int
    m: int

    def __post_init__(self):
        if not (self.k >= self.l >= self.m >= 1):
            raise BadParams(f"triple must be sorted k >= l >= m >= 1, got {self}")

    @staticmethod
    def of(k: int, l: int, m: int) -> "SOTriple":
        k, l, m = sorted((int(k), int(l), int(m)), reverse=True)
        return SOTriple(k, l, m)

    @property
    def boundary(self) -> bool:
        """True when l = m = 1: the parameter point sits on the cube boundary."""
        return self.l == 1 and self.m == 1

    @property
    def total(self) -> int:
        return self.k + self.l + self.m

    @property
    def h0(self) -> Fraction:
        return Fraction(self.total, 2 * (self.total - 2))

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k, self.l, self.m)


@dataclass(frozen=True)
class ElemTriple:
    t1: int
    t2: int
    t3: int

    @staticmethod
    def of(triple: SOTriple) -> "ElemTriple":
        k, l, m = triple.as_tuple()
        return ElemTriple(k + l + m, k * l + k * m + l * m, k * l * m)


def eval_H(t1: int, t2: int, t3: int) -> int:
    """The degree-12 integer polynomial in the elementary symmetric functions."""
    n = t1 - 2
    head = 16 * n**2 + 4 * t3
    big = (
        1024 * t1**5 * n**4
        - 2048 * t1**4 * n**5
        + 512 * t1**3 * n**6
        + 1536 * t1**2 * n**7
        - 1536 * t1 * n**8
        + 512 * n**9
        + 3840 * t3 * t1**2 * n**4
        - 4096 * t3**3
        - 7680 * t3 * t1 * n**5
        - 6144 * t3**2 * t1 * n**2
        + 3840 * t3 * n**6
        + 6144 * t3**2 * n**3
    )
    return (
        head * big
        - 8 * t1 * head * (16 * n**2 - 32 * t3) * (80 * n**2 + 32 * t3) * t2
        - 16
        * t1**2
        * (
            832 * n**6
            - 1664 * t1 * n**5
            + 2560 * t3 * t1 * n**2
            + 1024 * t3**2
            - 2560 * t3 * n**3
            + 832 * t1**2 * n**4
        )
        * t2**2
        + 1024 * n**2 * (16 * n**2 - 32 * t3) * t2**3
        + 32768 * t1 * t2**4 * n**2
    )


def eval_G(triple) -> int:
    """G(k, l, m) = H of the elementary symmetric functions, exactly."""
    if not isinstance(triple, SOTriple):
        triple = SOTriple.of(*triple)
    e = ElemTriple.of(triple)
    return eval_H(e.t1, e.t2, e.t3)


def so_space(triple: SOTriple, accept_boundary: bool = False) -> GWSpace:
    """GWSpace with a = (k, l, m)/(2(k+l+m-2)) and d = (kl, km, lm).

    Triples with l = m = 1 give a1 = 1/2 (cube boundary) and are refused
    unless the caller opts in.
    """
    if not isinstance(triple, SOTriple):
        triple = SOTriple.of(*triple)
    k, l, m = triple.as_tuple()
    if triple.boundary and not accept_boundary:
        raise BoundaryTriple(
            f"(k, l, m) = {triple.as_tuple()} has a1 = 1/2; pass accept_boundary=True"
        )
    n = 2 * (k + l + m - 2)
    a = AParams(
        Fraction(k, n), Fraction(l, n), Fraction(m, n), boundary=triple.boundary
    )
    return GWSpace(a, (k * l, k * m, l * m), SOTripleProvenance(k, l, m))


@dataclass(frozen=True)
class CensusRecord:
    triple: SOTriple
    g_value: int
    region: str  # O1 | O3 | Omega | BoundaryCube
    predicted_count: Optional[int]  # 4 / 2 / None (G = 0) / 1 (boundary)
    solved_count: Optional[int]
    flags: dict

    @property
    def g_sign(self) -> int:
        return (self.g_value > 0) - (self.g_value < 0)


def _bound_flags(k: int, l: int, m: int) -> dict:
    kl = k + l
    return {
        # m > sqrt(2k + 2l - 4), cleared of the root: four metrics
        "thm2_four": m * m > 2 * kl - 4,
        # m < sqrt(k + l): two metrics
        "thm2_two": m * m < kl,
        # m < (1 + sqrt(k+l)) (k+l-2)/(k+l-1), cleared of the root
        "prop6_two": (kl - 1) * m * m - 2 * (kl - 2) * m - (kl - 2) ** 2 < 0,
        # the small-m cases settled outright
        "cor3_two": m == 1 or (m == 2 and kl >= 5) or (m == 3 and kl >= 7),
    }


def classify_so(triple: SOTriple, solve: bool = False) -> CensusRecord:
    """Region, predicted metric count, and theorem-bound flags for one triple.

    Region comes from the exact sign of G (negative: O1, four metrics;
    positive: O3, two metrics; zero: on the surface, count unresolved by the
    sign rule). Triples with l = m = 1 sit on the cube boundary and carry
    exactly one metric in closed form.
    """
    if not isinstance(triple, SOTriple):
        triple = SOTriple.of(*triple)
    g = eval_G(triple)
    k, l, m = triple.as_tuple()
    if triple.boundary:
        record = CensusRecord(triple, g, "BoundaryCube", 1, None, {})
    else:
        if g < 0:
            region, predicted = "O1", 4
        elif g > 0:
            region, predicted = "O3", 2
        else:
            region, predicted = "Omega", None
        record = CensusRecord(triple, g, region, predicted, None, _bound_flags(k, l, m))
    if solve:
        from . import einstein

        space = so_space(triple, accept_boundary=True)
        solved = einstein.count(space.params)
        if record.predicted_count is not None and solved != record.predicted_count:
            raise WallachError(
                f"solver found {solved} classes at {triple.as_tuple()}, "
                f"predicted {record.predicted_count}"
            )
        record = CensusRecord(
            triple, g, record.region, record.predicted_count, solved, record.flags
        )
    return record


def enumerate_triples(n_max: int) -> list[SOTriple]:
    """All sorted triples with k+l+m <= n_max, ordered by (k+l+m, k, l)."""
    out = []
    for total in range(3, n_max + 1):
        bucket = []
        for k in range((total + 2) // 3, total - 1):
            for l in range(1, k + 1):
                m = total - k - l
                if 1 <= m <= l:
                    bucket.append(SOTriple(k, l, m))
        bucket.sort(key=lambda t: (t.k, t.l))
        out.extend(bucket)
    return out


def _classify_chunk(args):
    triples, solve = args
    return [classify_so(t, solve=solve) for t in triples]


def sweep(n_max: int, solve: bool = False, workers: int = 1) -> list[CensusRecord]:
    """Census of every triple with k+l+m <= n_max, in deterministic order.

    The record list (and hence any serialized output) is byte-identical
    regardless of worker count: work is partitioned, then merged back in
    the global (k+l+m, k, l) order.
    """
    if n_max < 5:
        raise BadParams("sweep needs n_max >= 5")
    triples = enumerate_triples(n_max)
    if workers <= 1 or len(triples) < 32:
        return [classify_so(t, solve=solve) for t in triples]
    chunks = [(triples[i::workers], solve) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_classify_chunk, chunks))
    merged = [r for chunk in results for r in chunk]
    merged.sort(key=lambda r: (r.triple.total, r.triple.k, r.triple.l))
    return merged


def default_workers() -> int:
    env = os.environ.get("WALLACH_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# -- the G = 0 scanner ---------------------------------------------------------


@dataclass(frozen=True)
class ZeroHit:
    triple: SOTriple
    family_t: Optional[int]  # t with (k,l,m) = (t^2+1, t^2+1, 2t), else None

    @property
    def novel(self) -> bool:
        return self.family_t is None


def _family_parameter(triple: SOTriple) -> Optional[int]:
    if triple.m % 2:
        return None
    t = triple.m // 2
    if triple.k == triple.l == t * t + 1:
        return t
    return None


def scan_zeros(n_max: int) -> list[ZeroHit]:
    """All triples with l >= 2, k+l+m <= n_max and G exactly zero.

    Each hit is annotated with its membership in the known family
    (t^2+1, t^2+1, 2t), or marked novel. The scanner reports; it does not
    interpret.
    """
    if n_max < 6:
        raise BadParams("scan_zeros needs n_max >= 6")
    hits = []
    for triple in enumerate_triples(n_max):
        if triple.l < 2:
            continue
        if eval_G(triple) == 0:
            hits.append(ZeroHit(triple, _family_parameter(triple)))
    return hits


# -- Table 3 fixture ------------------------------------------------------------

# The 45 small triples with their regions. One printed cell fails exact
# verification and is stored corrected: (5,5,4) is the t = 2 member of the
# family (t^2+1, t^2+1, 2t), for which G vanishes identically, so its region
# is the surface itself, not O3.
TABLE3 = (
    ((4, 2, 1), "O3"), ((3, 3, 1), "O3"), ((3, 2, 2), "O3"), ((5, 2, 1), "O3"),
    ((4, 3, 1), "O3"), ((4, 2, 2), "O3"), ((3, 3, 2), "O3"), ((6, 2, 1), "O3"),
    ((5, 3, 1), "O3"), ((4, 4, 1), "O3"), ((5, 2, 2), "O3"), ((4, 3, 2), "O3"),
    ((3, 3, 3), "O1"), ((7, 2, 1), "O3"), ((6, 3, 1), "O3"), ((5, 4, 1), "O3"),
    ((6, 2, 2), "O3"), ((5, 3, 2), "O3"), ((4, 4, 2), "O3"), ((4, 3, 3), "O3"),
    ((8, 2, 1), "O3"), ((7, 3, 1), "O3"), ((6, 4, 1), "O3"), ((5, 5, 1), "O3"),
    ((7, 2, 2), "O3"), ((6, 3, 2), "O3"), ((5, 4, 2), "O3"), ((5, 3, 3), "O3"),
    ((4, 4, 3), "O3"), ((9, 2, 1), "O3"), ((8, 3, 1), "O3"), ((7, 4, 1), "O3"),
    ((6, 5, 1), "O3"), ((8, 2, 2), "O3"), ((7, 3, 2), "O3"), ((6, 4, 2), "O3"),
    ((5, 5, 2), "O3"), ((6, 3, 3), "O3"), ((5, 4, 3), "O3"), ((4, 4, 4), "O1"),
    ((5, 4, 4), "O1"), ((6, 4, 4), "O1"), ((5, 5, 4), "Omega"), ((6, 5, 5), "O1"),
    ((7, 6, 5), "O1"),
)


@dataclass(frozen=True)
class Table3Row:
    triple: SOTriple
    expected_region: str
    computed_region: str
    g_sign: int

    @property
    def ok(self) -> bool:
        return self.expected_region == self.computed_region


def table3_check() -> list[Table3Row]:
    """Classify the 45 catalog triples and compare against the fixture."""
    rows = []
    for (k, l, m), expected in TABLE3:
        rec = classify_so(SOTriple(k, l, m))
        rows.append(Table3Row(rec.triple, expected, rec.region, rec.g_sign))
    return rows


# -- serialization ---------------------------------------------------------------

CSV_HEADER = "k,l,m,G_sign,region,predicted_count,solved_count,flags"


def record_to_csv_row(r: CensusRecord) -> str:
    flags = ";".join(name for name in FLAG_ORDER if r.flags.get(name))
    predicted = "" if r.predicted_count is None else str(r.predicted_count)
    solved = "" if r.solved_count is None else str(r.solved_count)
    k, l, m = r.triple.as_tuple()
    return f"{k},{l},{m},{r.g_sign},{r.region},{predicted},{solved},{flags}"


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    lines.extend(record_to_csv_row(r) for r in records)
    return "\n".join(lines) + "\n"


def record_to_json(r: CensusRecord) -> dict:
    return {
        "k": r.triple.k,
        "l": r.triple.l,
        "m": r.triple.m,
        "G": str(r.g_value),
        "G_sign": r.g_sign,
        "region": r.region,
        "predicted_count": r.predicted_count,
        "solved_count": r.solved_count,
        "flags": {name: bool(r.flags.get(name)) for name in FLAG_ORDER} if r.flags else {},
    }
