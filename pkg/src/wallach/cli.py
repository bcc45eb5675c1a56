"""Command-line surface: classify | solve | flow | portrait | census | scan-zeros | catalog.

Exact rationals cross this boundary as "p/q" strings; decimal renderings are
output-only. Exit codes: 0 success, 2 parse/usage, 3 certification or
inconclusive classification, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import census as census_mod
from . import einstein, flow, omega
from .core import AParams, abstract_space, catalog_to_json, expected_region
from .errors import (
    CertificationFailure,
    IndistinguishableAtTolerance,
    ParseError,
    SegmentInconclusive,
    WallachError,
)
from .exactnum import Interval, QuadExt, decimal_str, format_rational, parse_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_INTERNAL = 4

_USAGE_ERRORS = (
    ParseError,
    ValueError,
)
_INCONCLUSIVE_ERRORS = (
    CertificationFailure,
    SegmentInconclusive,
    IndistinguishableAtTolerance,
)


@dataclass
class RunConfig:
    digits: int = 30
    fmt: str = "json"
    output: str | None = None
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.digits < 6:
            raise ParseError("precision must be at least 6 digits")
        if self.workers < 1:
            raise ParseError("worker count must be at least 1")


def _emit(config: RunConfig, text: str):
    if config.output:
        with open(config.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _mpf_decimal(x, digits: int) -> str:
    """Deterministic fixed-point rendering of an mpf value."""
    with mp.workdps(mp.mp.dps + 10):
        scale = mp.mpf(10) ** digits
        n = int(mp.floor(x * scale + mp.mpf(1) / 2))
    return decimal_str(Fraction(n, 10**digits), digits)


def _scalar_json(v, digits: int) -> dict:
    if isinstance(v, Fraction):
        return {"exact": format_rational(v), "decimal": decimal_str(v, digits)}
    if isinstance(v, QuadExt):
        mid = v.enclosure(Fraction(1, 10 ** (digits + 10))).mid
        return {
            "exact": f"{format_rational(v.a)} + {format_rational(v.b)}*sqrt({v.d})",
            "decimal": decimal_str(mid, digits),
        }
    if isinstance(v, Interval):
        return {
            "exact": None,
            "decimal": decimal_str(v.mid, digits),
            "enclosure_width": decimal_str(v.width, digits) if v.width else "0",
        }
    raise ParseError(f"unserializable scalar {v!r}")


def _parse_a(tokens) -> AParams:
    vals = [parse_rational(t) for t in tokens]
    if len(vals) != 3:
        raise ParseError("need exactly three rationals a1 a2 a3")
    return AParams(*vals)


def _space_from_args(args):
    if getattr(args, "so", None):
        triple = census_mod.SOTriple.of(*args.so)
        return census_mod.so_space(triple, accept_boundary=True)
    if getattr(args, "a", None):
        return abstract_space(_parse_a(args.a))
    raise ParseError("specify a space with --a a1 a2 a3 or --so k l m")


# -- subcommands ---------------------------------------------------------------


def cmd_classify(args, config: RunConfig) -> int:
    a = _parse_a([args.a1, args.a2, args.a3])
    label = omega.classify_region(a)
    s = omega.symfun(a)
    payload = {
        "a": [format_rational(v) for v in a.as_tuple()],
        "s1": format_rational(s.s1),
        "Q_sign": label.q_sign,
        "region": label.label,
        "method": label.method,
    }
    _emit(config, _json_dump(payload))
    return EXIT_OK


def cmd_solve(args, config: RunConfig) -> int:
    space = _space_from_args(args)
    solutions = einstein.solve(space.params)
    payload = []
    for sol in solutions:
        x1, x2, x3 = sol.metric.as_tuple()
        payload.append(
            {
                "x1": _scalar_json(x1, config.digits),
                "x2": _scalar_json(x2, config.digits),
                "x3": _scalar_json(x3, config.digits),
                "multiplicity": sol.multiplicity,
                "certificate": sol.certificate,
                "isometric_with": list(sol.isometric_with),
            }
        )
    _emit(config, _json_dump({"a": [format_rational(v) for v in space.params.as_tuple()], "solutions": payload}))
    return EXIT_OK


def _parse_x0(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("x0 must be three comma-separated numbers")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse x0 {text!r}: {exc}") from None


def cmd_flow(args, config: RunConfig) -> int:
    space = _space_from_args(args)
    x0 = _parse_x0(args.x0)
    traj = flow.integrate(
        space,
        x0,
        t_max=parse_rational(args.t_max) if "/" in args.t_max else Fraction(args.t_max),
        step=parse_rational(args.step) if "/" in args.step else Fraction(args.step),
        sample_every=args.sample_every,
    )
    d = config.digits
    if config.fmt == "csv":
        lines = ["t,x1,x2,x3,v1,v2,v3,volume"]
        for s in traj.samples:
            row = [_mpf_decimal(s.t, d)]
            row += [_mpf_decimal(v, d) for v in s.x]
            row += [_mpf_decimal(v, d) for v in s.v]
            row.append(_mpf_decimal(s.volume, d))
            lines.append(",".join(row))
        _emit(config, "\n".join(lines) + "\n")
    else:
        payload = {
            "halted": traj.halted,
            "samples": [
                {
                    "t": _mpf_decimal(s.t, d),
                    "x": [_mpf_decimal(v, d) for v in s.x],
                    "v": [_mpf_decimal(v, d) for v in s.v],
                    "volume": _mpf_decimal(s.volume, d),
                }
                for s in traj.samples
            ],
        }
        _emit(config, _json_dump(payload))
    return EXIT_OK


def _equilibria_payload(reports, digits: int):
    out = []
    for rep in reports:
        x = [_scalar_json(v, digits) for v in rep.metric.as_tuple()]
        eigs = []
        for e in rep.eigenvalues:
            if isinstance(e, mp.mpc):
                eigs.append(
                    {"re": _mpf_decimal(e.real, digits), "im": _mpf_decimal(e.imag, digits)}
                )
            else:
                eigs.append({"re": _mpf_decimal(e, digits), "im": "0"})
        out.append({"x": x, "eigenvalues": eigs, "class": rep.classification})
    return out


def cmd_portrait(args, config: RunConfig) -> int:
    space = _space_from_args(args)
    reports = flow.classify_equilibria(space)
    if args.bounds:
        bounds = tuple(parse_rational(b) for b in args.bounds.split(","))
        if len(bounds) != 4:
            raise ParseError("bounds must be x1min,x1max,x2min,x2max")
    else:
        bounds = _default_bounds(reports)
    data = flow.portrait_grid(space, args.grid, bounds)
    d = config.digits
    eq_block = _equilibria_payload(data.equilibria, d)
    if config.fmt == "csv":
        lines = ["x1,x2,v1,v2"]
        for u, v, du, dv in data.samples:
            lines.append(
                ",".join(_mpf_decimal(w, d) for w in (u, v, du, dv))
            )
        lines.append("")
        lines.append("equilibrium_x1,equilibrium_x2,equilibrium_x3,class")
        for rep in data.equilibria:
            enc = [_scalar_json(v, d)["decimal"] for v in rep.metric.as_tuple()]
            lines.append(",".join(enc) + f",{rep.classification}")
        _emit(config, "\n".join(lines) + "\n")
    else:
        payload = {
            "samples": [
                {
                    "x1": _mpf_decimal(u, d),
                    "x2": _mpf_decimal(v, d),
                    "v1": _mpf_decimal(du, d),
                    "v2": _mpf_decimal(dv, d),
                }
                for u, v, du, dv in data.samples
            ],
            "equilibria": eq_block,
        }
        _emit(config, _json_dump(payload))
    return EXIT_OK


def _default_bounds(reports):
    los, his = [], []
    for coord in range(2):
        vals = []
        for rep in reports:
            enc = rep.metric.as_tuple()[coord]
            vals.append(enc.mid if isinstance(enc, Interval) else Fraction(enc))
        los.append(min(vals))
        his.append(max(vals))
    pad = Fraction(1, 2)
    return (
        max(Fraction(1, 100), los[0] * pad),
        his[0] * 2,
        max(Fraction(1, 100), los[1] * pad),
        his[1] * 2,
    )


def cmd_census(args, config: RunConfig) -> int:
    if args.table3:
        rows = census_mod.table3_check()
        if config.fmt == "csv":
            lines = ["k,l,m,expected_region,computed_region,G_sign,status"]
            for r in rows:
                k, l, m = r.triple.as_tuple()
                status = "PASS" if r.ok else "FAIL"
                lines.append(
                    f"{k},{l},{m},{r.expected_region},{r.computed_region},{r.g_sign},{status}"
                )
            _emit(config, "\n".join(lines) + "\n")
        else:
            payload = [
                {
                    "triple": list(r.triple.as_tuple()),
                    "expected_region": r.expected_region,
                    "computed_region": r.computed_region,
                    "G_sign": r.g_sign,
                    "status": "PASS" if r.ok else "FAIL",
                }
                for r in rows
            ]
            _emit(config, _json_dump(payload))
        return EXIT_OK if all(r.ok for r in rows) else EXIT_INTERNAL
    records = census_mod.sweep(args.max, solve=args.solve, workers=config.workers)
    if config.fmt == "csv":
        _emit(config, census_mod.records_to_csv(records))
    else:
        _emit(config, _json_dump([census_mod.record_to_json(r) for r in records]))
    return EXIT_OK


def cmd_scan_zeros(args, config: RunConfig) -> int:
    hits = census_mod.scan_zeros(args.max)
    payload = [
        {
            "triple": list(h.triple.as_tuple()),
            "family_t": h.family_t,
            "novel": h.novel,
        }
        for h in hits
    ]
    if config.fmt == "csv":
        lines = ["k,l,m,family_t,novel"]
        for h in hits:
            k, l, m = h.triple.as_tuple()
            lines.append(f"{k},{l},{m},{h.family_t if h.family_t is not None else ''},{h.novel}")
        _emit(config, "\n".join(lines) + "\n")
    else:
        _emit(config, _json_dump(payload))
    return EXIT_OK


def cmd_catalog(args, config: RunConfig) -> int:
    rows = catalog_to_json()
    if args.line is not None:
        rows = [r for r in rows if r["line"] == args.line]
        if not rows:
            raise ParseError(f"no catalog line {args.line}")
        row = dict(rows[0])
        a = _parse_a(row["a"])
        try:
            row["classified_region"] = omega.classify_region(a).label
        except WallachError:
            row["classified_region"] = None
        row["expected_region"] = expected_region(args.line)
        _emit(config, _json_dump(row))
        return EXIT_OK
    if config.fmt == "csv":
        lines = ["line,a1,a2,a3,d1,d2,d3,expected_region"]
        for r in rows:
            lines.append(
                ",".join(
                    [str(r["line"]), *r["a"], *r["d"], r["expected_region"]]
                )
            )
        _emit(config, "\n".join(lines) + "\n")
    else:
        _emit(config, _json_dump(rows))
    return EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallach",
        description="Exact region classification, certified Einstein-metric solving, "
        "and Ricci-flow equilibrium analysis for generalized Wallach spaces.",
    )
    parser.add_argument("--digits", type=int, default=30, help="decimal digits in output")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--output", default=None, help="write to file instead of stdout")
    parser.add_argument("--workers", type=int, default=None, help="parallel workers for census sweeps")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region of an exact parameter point")
    p.add_argument("a1")
    p.add_argument("a2")
    p.add_argument("a3")

    p = sub.add_parser("solve", help="certified Einstein metrics of a space")
    p.add_argument("--a", nargs=3, metavar=("A1", "A2", "A3"))
    p.add_argument("--so", nargs=3, type=int, metavar=("K", "L", "M"))

    p = sub.add_parser("flow", help="integrate the normalized Ricci flow")
    p.add_argument("--a", nargs=3)
    p.add_argument("--so", nargs=3, type=int)
    p.add_argument("--x0", required=True, help="starting metric, e.g. 1,1,1.01")
    p.add_argument("--t-max", dest="t_max", default="10")
    p.add_argument("--step", default="0.001")
    p.add_argument("--sample-every", dest="sample_every", type=int, default=100)

    p = sub.add_parser("portrait", help="phase-portrait grid on the volume-1 chart")
    p.add_argument("--a", nargs=3)
    p.add_argument("--so", nargs=3, type=int)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--bounds", default=None, help="x1min,x1max,x2min,x2max as rationals")

    p = sub.add_parser("census", help="Diophantine census of SO-type triples")
    p.add_argument("--max", type=int, default=18)
    p.add_argument("--solve", action="store_true", help="certified solve per record")
    p.add_argument("--table3", action="store_true", help="self-check the 45-row catalog")

    p = sub.add_parser("scan-zeros", help="triples with G exactly zero")
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("catalog", help="the fifteen catalog families")
    p.add_argument("--line", type=int, default=None)

    return parser


_COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "flow": cmd_flow,
    "portrait": cmd_portrait,
    "census": cmd_census,
    "scan-zeros": cmd_scan_zeros,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            digits=args.digits,
            fmt=args.fmt,
            output=args.output,
            workers=args.workers if args.workers else census_mod.default_workers(),
            seed=args.seed,
        )
        return _COMMANDS[args.command](args, config)
    except _INCONCLUSIVE_ERRORS as exc:
        _error_payload(exc)
        return EXIT_INCONCLUSIVE
    except _USAGE_ERRORS as exc:
        _error_payload(exc)
        return EXIT_USAGE
    except WallachError as exc:
        _error_payload(exc)
        return EXIT_USAGE if _is_usage(exc) else EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - unexpected invariant break
        _error_payload(exc)
        return EXIT_INTERNAL


def _is_usage(exc: WallachError) -> bool:
    from .errors import (
        BadBounds,
        BadLine,
        BadParam,
        BadParams,
        BoundaryInput,
        BoundaryTriple,
        NonPositiveMetric,
        NonPositiveStart,
        OutOfRange,
        StepTooLarge,
    )

    return isinstance(
        exc,
        (
            BadBounds,
            BadLine,
            BadParam,
            BadParams,
            BoundaryInput,
            BoundaryTriple,
            NonPositiveMetric,
            NonPositiveStart,
            OutOfRange,
            StepTooLarge,
        ),
    )


def _error_payload(exc: Exception):
    sys.stderr.write(
        json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
    )


if __name__ == "__main__":
    sys.exit(main())
