"""Command-line front door: one subcommand per analysis, machine-readable output.

Every run emits a single JSON document (or CSV where plot data is the point)
embedding the schema tag, tool version, fully resolved configuration and
wall time.  Rational inputs are accepted as "p/q" or decimal strings and
parsed exactly, never through binary floats.

Exit codes: 0 success, 2 usage/configuration error, 3 property violation
(a certified internal invariant failed; the offending invariant is named).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .moebius import as_fraction, make_family
from .words import SubsystemSpec, SubsystemVariant, build_subsystem, max_level
from . import geometry, pressure, separation

SCHEMA = "ifslab/1"


class UsageError(ValueError):
    """Configuration problem that should exit with code 2."""


class PropertyViolation(RuntimeError):
    """A certified invariant failed; exits with code 3."""


def _parse_fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _positive_fraction(text: str) -> Fraction:
    value = _parse_fraction(text)
    if value <= 0:
        raise UsageError(f"parameter must be positive, got {text!r}")
    return value


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from exc


def _parse_fraction_list(text: str) -> list[Fraction]:
    return [_parse_fraction(part) for part in text.split(",") if part]


def _jsonable(value):
    """Recursively convert report objects to JSON-safe structures."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        return repr(value)
    return value


def _emit(args: argparse.Namespace, config: dict, result: dict, csv_rows: list[dict] | None, started: float) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise UsageError(f"subcommand {args.command!r} has no CSV representation; use --format json")
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(csv_rows[0].keys()))
        writer.writeheader()
        for row in csv_rows:
            writer.writerow({k: _jsonable(v) for k, v in row.items()})
        text = buffer.getvalue()
    else:
        document = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": args.command,
            "config": _jsonable(config),
            "result": _jsonable(result),
            "wall_time_ms": round((time.perf_counter() - started) * 1000.0, 3),
        }
        text = json.dumps(document, indent=2, sort_keys=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _common_config(args: argparse.Namespace) -> dict:
    return {
        "format": args.format,
        "out": args.out,
        "seed": args.seed,
        "threads": args.threads,
        "tol": args.tol,
        "max_level": max_level(),
    }


def _parse_subsystem(text: str, t: Fraction) -> SubsystemSpec:
    try:
        kind, raw_level = text.split(":")
        variant = SubsystemVariant(kind)
        level = int(raw_level)
    except ValueError as exc:
        raise UsageError(f"subsystem spec must look like full:4 or tilde:3, got {text!r}") from exc
    return SubsystemSpec(t, level, variant)


def cmd_dim(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    family = make_family(t)
    config = {"t": str(t), "levels": args.levels, "subsystem": args.subsystem, **_common_config(args)}
    rows = []
    for n in _parse_int_list(args.levels):
        level_dim = pressure.solve_level_dimension(family, n, args.tol)
        distortion = pressure.distortion_constant(family, n)
        bracket = pressure.dimension_bracket(family, n, distortion.value, args.tol)
        rows.append(
            {
                "level": n,
                "d_n": level_dim.value,
                "residual": level_dim.residual,
                "bracket_lo": bracket.lower,
                "bracket_hi": bracket.upper,
                "C_emp": str(distortion.value),
                "gamma2": str(family.gamma_upper),
            }
        )
    result: dict = {"levels": rows}
    if args.subsystem:
        spec = _parse_subsystem(args.subsystem, t)
        if spec.variant is not SubsystemVariant.FULL:
            raise UsageError("dimension reports cover full:<N> subsystems")
        report = pressure.subsystem_dimension_report(t, spec.level, args.tol)
        result["subsystem"] = report
        if report.mass_premise_holds and not (report.lower_bound_holds and report.upper_bound_holds):
            raise PropertyViolation(
                "subsystem level-1 dimension left the certified interval "
                f"[d_N - 1/(2N), d_N] at N={spec.level}"
            )
    return config, result, rows


def cmd_pressure(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    family = make_family(t)
    config = {"t": str(t), "levels": args.levels, "s": args.s, **_common_config(args)}
    exponent = float(args.s)
    rows = []
    for n in _parse_int_list(args.levels):
        estimate = pressure.pressure_estimate(family, n, exponent)
        rows.append({"level": n, "s": exponent, "value": estimate.value})
    return config, {"pressure": rows}, rows


def cmd_separation(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    config = {
        "t": str(t),
        "n": args.n,
        "variant": args.variant,
        "probes": args.probes,
        **_common_config(args),
    }
    result: dict = {}
    if args.variant in ("sesc", "both"):
        probes = _parse_fraction_list(args.probes) if args.probes else [separation.fixed_point_probe(t)]
        result["sesc"] = separation.sesc_metric(t, args.n, probes)
    if args.variant in ("diophantine", "both"):
        result["diophantine"] = separation.diophantine_metric(t, args.n, strong=False)
        result["diophantine_strong"] = separation.diophantine_metric(t, args.n, strong=True)
    return config, result, None


def cmd_freeness(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    config = {
        "t": str(t),
        "depth": args.depth,
        "samples": args.samples,
        "max_len": args.max_len,
        **_common_config(args),
    }
    conjugacy = separation.appendix_conjugacy_check()
    if not conjugacy.ok:
        raise PropertyViolation("conjugation identity for the integer freeness form failed")
    residues = separation.residue_freeness_check(args.samples, args.max_len, args.seed)
    violations = [check for check in residues if not check.ok]
    if violations:
        raise PropertyViolation(f"mod-4 residue obstruction violated for {len(violations)} word pair(s)")
    overlaps = separation.exact_overlap_search(t, args.depth)
    relations = separation.relation_search_ABC(t, args.depth)
    result = {
        "conjugacy_ok": conjugacy.ok,
        "residues_checked": len(residues),
        "residues_ok": not violations,
        "overlaps": overlaps,
        "relations": relations,
    }
    return config, result, None


def cmd_lemmas(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    config = {
        "lemma": args.lemma,
        "t": args.t,
        "k": args.k,
        "n": args.n,
        "grid": args.grid,
        "v": args.v,
        "w": args.w,
        "t_max": args.t_max,
        "resolution": args.resolution,
        **_common_config(args),
    }
    result: dict = {}
    if args.lemma in ("2", "all"):
        t = _positive_fraction(args.t)
        result["lemma2"] = geometry.verify_lemma2(args.k, t, all_pairs=True)
    if args.lemma == "3":
        if not (args.v and args.w):
            raise UsageError("lemma 3 threshold search needs --v and --w (a consecutive chain pair)")
        result["lemma3"] = geometry.lemma3_find_threshold(
            args.v, args.w, _positive_fraction(args.t_max), _positive_fraction(args.resolution)
        )
    if args.lemma in ("4", "all"):
        t = _positive_fraction(args.t)
        result["lemma4"] = geometry.verify_lemma4(args.k, t)
        result["lemma4_extremal_threshold"] = geometry.lemma4_extremal_threshold(args.k)
    if args.lemma == "cert":
        if not args.grid:
            raise UsageError("certificates need --grid with at least one rational parameter")
        result["certificate"] = geometry.nondegeneracy_certificate(args.n, _parse_fraction_list(args.grid))
    if not result:
        raise UsageError(f"unknown lemma selector {args.lemma!r}")
    return config, result, None


def cmd_attractor(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    config = {
        "t": str(t),
        "levels": args.levels,
        "subsystem": args.subsystem,
        "search_common": args.search_common,
        **_common_config(args),
    }
    if args.subsystem:
        ifs = build_subsystem(_parse_subsystem(args.subsystem, t))
    else:
        ifs = make_family(t)
    estimate = geometry.box_counting(ifs, _parse_int_list(args.levels))
    result: dict = {"box_counting": estimate}
    csv_rows = [
        {"epsilon": eps, "count": count}
        for eps, count in zip(estimate.scales, estimate.counts)
    ]
    csv_rows.append({"epsilon": "slope", "count": estimate.slope})
    if args.search_common:
        try:
            level, lo, hi, res = args.search_common.split(":")
        except ValueError as exc:
            raise UsageError("--search-common expects n:t_lo:t_hi:resolution") from exc
        search = geometry.find_common_disjoint_parameter(
            int(level), (_positive_fraction(lo), _positive_fraction(hi)), _positive_fraction(res)
        )
        result["common_disjoint"] = search
    return config, result, csv_rows


def cmd_measure(args: argparse.Namespace) -> tuple[dict, dict, list[dict] | None]:
    t = _positive_fraction(args.t)
    family = make_family(t)
    config = {"t": str(t), "n": args.n, "s": args.s, "q": args.q, **_common_config(args)}
    if args.s == "auto":
        exponent = pressure.solve_level_dimension(family, args.n, args.tol).value
    else:
        exponent = float(args.s)
    qs = [float(q) for q in args.q.split(",") if q]
    estimate = geometry.measure_stats(family, args.n, exponent, qs)
    result = {"exponent": exponent, "measure": estimate}
    csv_rows = [
        {
            "level": estimate.level,
            "s": estimate.exponent,
            "cylinders": estimate.cylinder_count,
            "cylinders_at_zero": estimate.zero_cylinder_count,
            "ball_mass": estimate.ball_mass,
            "local_dim_quotient": estimate.local_dim_quotient,
            **{f"lq_{q}": v for q, v in estimate.lq_sums.items()},
        }
    ]
    return config, result, csv_rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ifslab",
        description="Exact-arithmetic analyses of a one-parameter Moebius IFS family.",
    )
    parser.add_argument("--version", action="version", version=f"ifslab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker hint; execution is deterministic")
    common.add_argument("--tol", type=float, default=1e-12)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="level dimensions and distortion brackets")
    p.add_argument("--t", required=True)
    p.add_argument("--levels", default="1,2,4")
    p.add_argument("--subsystem", default=None, help="e.g. full:4 for the keep-a-3 subsystem report")
    p.set_defaults(handler=cmd_dim)

    p = sub.add_parser("pressure", parents=[common], help="finite-level growth-rate estimates")
    p.add_argument("--t", required=True)
    p.add_argument("--levels", default="1,2,4")
    p.add_argument("--s", required=True, help="exponent (float)")
    p.set_defaults(handler=cmd_pressure)

    p = sub.add_parser("separation", parents=[common], help="pointwise and matrix-entry separation")
    p.add_argument("--t", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--variant", choices=("sesc", "diophantine", "both"), default="both")
    p.add_argument("--probes", default=None, help="comma list of rationals; default: the right fixed point")
    p.set_defaults(handler=cmd_separation)

    p = sub.add_parser("freeness", parents=[common], help="conjugacy, residue and relation certificates")
    p.add_argument("--t", required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=20, dest="max_len")
    p.set_defaults(handler=cmd_freeness)

    p = sub.add_parser("lemmas", parents=[common], help="cylinder-geometry verdicts and certificates")
    p.add_argument("--lemma", choices=("2", "3", "4", "cert", "all"), default="all")
    p.add_argument("--t", default="1")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, default=3, help="level for --lemma cert")
    p.add_argument("--grid", default=None, help="comma list of rationals for --lemma cert")
    p.add_argument("--v", default=None)
    p.add_argument("--w", default=None)
    p.add_argument("--t-max", default="64", dest="t_max")
    p.add_argument("--resolution", default="1/64")
    p.set_defaults(handler=cmd_lemmas)

    p = sub.add_parser("attractor", parents=[common], help="box counting and common-disjoint search")
    p.add_argument("--t", required=True)
    p.add_argument("--levels", default="2,3,4,5")
    p.add_argument("--subsystem", default=None, help="e.g. tilde:3 to box-count a subsystem")
    p.add_argument("--search-common", default=None, dest="search_common", help="n:t_lo:t_hi:resolution")
    p.set_defaults(handler=cmd_attractor)

    p = sub.add_parser("measure", parents=[common], help="cylinder-weight statistics at the origin")
    p.add_argument("--t", required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--s", default="auto", help='exponent in (0,1], or "auto" for the level dimension')
    p.add_argument("--q", default="2,3", help="comma list of moment orders")
    p.set_defaults(handler=cmd_measure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        config, result, csv_rows = args.handler(args)
        _emit(args, config, result, csv_rows, started)
    except UsageError as exc:
        print(f"ifslab: error: {exc}", file=sys.stderr)
        return 2
    except PropertyViolation as exc:
        print(f"ifslab: property violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"ifslab: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
