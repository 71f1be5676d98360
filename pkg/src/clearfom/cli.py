"""
Command-line front end.

    clearfom compute   --factors f.json [--level link] [--weights 1,1,2,1,1]
    clearfom link      --year 2016 --length 0.01
    clearfom fit       --input history.csv --fom clear [--svg fit.svg]
    clearfom breakeven --year 2016
    clearfom surface   --years 2016:2030:15 --lengths 1e-6:1:200log --out grid.csv
    clearfom select    --options opts.json --context ctx.json [--policy policy.json]

Exit codes: 0 ok, 2 bad input, 3 no break-even crossing in range.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .breakeven import LengthRange, crossing_curve, surface
from .errors import ClearError, IncomparableFom, InvalidParams, InvalidRange
from .fom import ClearFactors, HierarchyLevel, MakimotoFactors, UNIT_WEIGHTS, WeightVector, compute_clear, compute_makimoto, rank_options
from .gridio import emit_crossing_csv, emit_grid_csv
from .reconfig import OperatingContext, WeightPolicy, select_technology
from .svg import PlotSpec, render_surface_svg, render_trend_svg
from .techmodels import link_clear, link_factors, load_params
from .trends import DeviationReport, FomKind, detect_deviation, fit_trend, fom_series, ingest_csv

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_CROSSING = 3

DEFAULT_YEARS = "2016:2030:15"
DEFAULT_LENGTHS = "1e-6:1:200log"


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[float, float, int, bool]:
    """Parse ``min:max:count`` with an optional ``log`` suffix."""
    log = text.endswith("log")
    body = text[:-3] if log else text
    parts = body.split(":")
    if len(parts) != 3:
        raise InvalidRange(f"range must look like min:max:count[log], got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise InvalidRange(f"range must look like min:max:count[log], got {text!r}") from None
    if count < 1 or hi < lo or (count > 1 and hi == lo) or (count == 1 and hi != lo):
        raise InvalidRange(f"inconsistent range {text!r}")
    if log and lo <= 0:
        raise InvalidRange(f"log range needs positive bounds, got {text!r}")
    return lo, hi, count, log


def expand_range(lo: float, hi: float, count: int, log: bool) -> list[float]:
    if count == 1:
        return [lo]
    if log:
        a, b = math.log10(lo), math.log10(hi)
        pts = [10.0 ** (a + (b - a) * i / (count - 1)) for i in range(count)]
    else:
        pts = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    pts[0], pts[-1] = lo, hi
    return pts


def _year_list(args) -> list[float]:
    if getattr(args, "year", None) is not None:
        return [args.year]
    lo, hi, n, log = parse_range(args.years)
    if log:
        raise InvalidRange("year ranges are linear; drop the 'log' suffix")
    return expand_range(lo, hi, n, False)


def _length_axis(text: str) -> tuple[LengthRange, list[float] | None]:
    lo, hi, n, log = parse_range(text)
    if n < 2:
        raise InvalidRange("length range needs at least 2 points")
    rng = LengthRange(lo, hi, n)
    # log spacing is native; a linear request gets explicit sample points
    return rng, None if log else expand_range(lo, hi, n, False)


def _read_json(path: str):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _weights(args) -> WeightVector:
    return WeightVector.parse(args.weights) if args.weights else UNIT_WEIGHTS


def _params(args):
    if args.params is None:
        return load_params()
    return load_params(_read_json(args.params))


def _options(data) -> list[tuple[str, ClearFactors]]:
    if isinstance(data, dict) and set(data) == {"options"}:
        data = data["options"]
    if not isinstance(data, list):
        raise InvalidParams("options file must hold a list of {label, ...factor keys} objects")
    out = []
    for i, item in enumerate(data):
        if not isinstance(item, dict) or "label" not in item:
            raise InvalidParams(f"option {i}: expected an object with a 'label' key")
        fields_ = {k: v for k, v in item.items() if k != "label"}
        out.append((str(item["label"]), ClearFactors.from_dict(fields_)))
    return out


def _annotations(items: Sequence[str] | None) -> list[tuple[str, float, float]]:
    out = []
    for text in items or ():
        parts = text.rsplit(",", 2)
        if len(parts) != 3:
            raise InvalidParams(f"annotation must be label,x,y, got {text!r}")
        try:
            out.append((parts[0], float(parts[1]), float(parts[2])))
        except ValueError:
            raise InvalidParams(f"annotation must be label,x,y, got {text!r}") from None
    return out


def _write_svg(path: str, render, *args) -> None:
    buf = io.BytesIO()
    render(*args, buf)
    try:
        Path(path).write_bytes(buf.getvalue())
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


# --- subcommands --------------------------------------------------------------


def cmd_compute(args, out) -> int:
    if (args.factors is None) == (args.makimoto is None):
        raise UsageError("give exactly one of --factors or --makimoto")
    if args.makimoto is not None:
        fv = compute_makimoto(MakimotoFactors.from_dict(_read_json(args.makimoto)))
        out.write(f"makimoto = {fv.value!r}\nlevel = {fv.level.value}\nsignature = {fv.unit_signature}\n")
        return EXIT_OK
    data = _read_json(args.factors)
    level = HierarchyLevel(args.level)
    weights = _weights(args)
    if isinstance(data, list) or (isinstance(data, dict) and "options" in data):
        ranked = rank_options(_options(data), weights, level)
        for rank, (label, fv) in enumerate(ranked, start=1):
            out.write(f"rank {rank}: {label} = {fv.value!r}\n")
        out.write(f"level = {level.value}\nsignature = {ranked[0][1].unit_signature}\n")
        return EXIT_OK
    fv = compute_clear(ClearFactors.from_dict(data), weights, level)
    out.write(f"clear = {fv.value!r}\nlevel = {fv.level.value}\nsignature = {fv.unit_signature}\n")
    return EXIT_OK


def cmd_link(args, out) -> int:
    electrical, hybrid = _params(args)
    techs = {"electrical": [electrical], "hybrid": [hybrid], "both": [electrical, hybrid]}[args.tech]
    weights = _weights(args)
    for tech in techs:
        f = link_factors(tech, args.length, args.year)
        fv = link_clear(tech, args.length, args.year, weights)
        out.write(
            f"[{tech.label}] year={args.year!r} length_m={args.length!r}\n"
            f"  capability_bps = {f.capability!r}\n"
            f"  latency_s = {f.latency!r}\n"
            f"  energy_j_per_bit = {f.energy!r}\n"
            f"  amount_m2 = {f.amount!r}\n"
            f"  resistance_usd = {f.resistance!r}\n"
            f"  clear = {fv.value!r}\n"
        )
    return EXIT_OK


def cmd_fit(args, out) -> int:
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    data = ingest_csv(raw)
    series = fom_series(data, FomKind(args.fom), _weights(args))
    fit = fit_trend(series)
    out.write(
        f"fom = {args.fom}\n"
        f"n_points = {fit.n_points}\n"
        f"skipped = {series.skipped}\n"
        f"slope_log2_per_year = {fit.slope_log2_per_year!r}\n"
        f"doubling_time_months = {fit.doubling_time_months!r}\n"
        f"r_squared = {fit.r_squared!r}\n"
    )
    report = DeviationReport(
        reference_slope_log2_per_year=args.reference_slope,
        consecutive_threshold=args.consecutive,
        factor_threshold=args.factor_threshold,
    )
    if len(series) >= report.consecutive_threshold + 2:
        dev = detect_deviation(series, report).deviation_year
        out.write(f"deviation_year = {'' if dev is None else repr(dev)}\n")
    if args.svg:
        spec = PlotSpec(
            x_label="year",
            y_label=args.fom,
            y_log=True,
            title=f"{args.fom} trend",
            annotations=_annotations(args.annotate),
        )
        _write_svg(args.svg, render_trend_svg, series, spec)
    return EXIT_OK


def cmd_breakeven(args, out) -> int:
    electrical, hybrid = _params(args)
    rng, _ = _length_axis(args.lengths)
    curve = crossing_curve(electrical, hybrid, _year_list(args), rng, _weights(args), args.rel_tol)
    missing = False
    for year, res in curve:
        if res.crossed:
            out.write(f"year={year!r} crossing_length_m={res.crossing_length_m!r}\n")
        else:
            missing = True
            out.write(f"year={year!r} no_crossing dominant={res.dominant_label}\n")
    return EXIT_NO_CROSSING if missing else EXIT_OK


def cmd_surface(args, out) -> int:
    electrical, hybrid = _params(args)
    rng, lengths = _length_axis(args.lengths)
    grid = surface(electrical, hybrid, _year_list(args), rng, _weights(args), args.rel_tol, lengths=lengths)
    if args.out:
        buf = io.StringIO()
        emit_grid_csv(grid, buf)
        _save(args.out, buf.getvalue())
    else:
        emit_grid_csv(grid, out)
    if args.crossing_out:
        buf = io.StringIO()
        emit_crossing_csv(grid.crossing_curve, buf)
        _save(args.crossing_out, buf.getvalue())
    if args.svg:
        spec = PlotSpec(
            width_px=720,
            height_px=480,
            x_label="year",
            y_label="link length (m)",
            title=f"CLEAR: {grid.label_a} (red) vs {grid.label_b} (blue)",
            annotations=_annotations(args.annotate),
        )
        _write_svg(args.svg, render_surface_svg, grid, spec)
    return EXIT_OK


def cmd_select(args, out) -> int:
    options = _options(_read_json(args.options))
    ctx = OperatingContext.from_dict(_read_json(args.context)) if args.context else OperatingContext()
    policy = WeightPolicy.from_dict(_read_json(args.policy)) if args.policy else WeightPolicy()
    decision = select_technology(options, ctx, policy, HierarchyLevel(args.level))
    out.write(decision.report())
    return EXIT_OK


def _save(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, "utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clearfom", description="CLEAR figure-of-merit modeling")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def common(p, params=True, weights=True, out=True):
        if params:
            p.add_argument("--params", metavar="PATH", help="technology parameter JSON (default: shipped defaults)")
        if weights:
            p.add_argument("--weights", metavar="wC,wL,wE,wA,wR", help="exponent per factor (default 1,1,1,1,1)")
        if out:
            p.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    level_choices = [lv.value for lv in HierarchyLevel]

    p = sub.add_parser("compute", help="evaluate CLEAR or Makimoto for factor files")
    p.add_argument("--factors", metavar="PATH", help="ClearFactors JSON object, or a list of labelled options to rank")
    p.add_argument("--makimoto", metavar="PATH", help="Makimoto factors JSON (mips, size_m3, cost_usd, power_w)")
    p.add_argument("--level", choices=level_choices, default="link", help="hierarchy level (default link)")
    common(p, params=False)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("link", help="link-level factors and CLEAR at one year and length")
    p.add_argument("--year", type=float, required=True, help="calendar year")
    p.add_argument("--length", type=float, required=True, help="link length in meters")
    p.add_argument("--tech", choices=["electrical", "hybrid", "both"], default="both", help="which technology")
    common(p)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("fit", help="fit a log-linear trend to a history CSV")
    p.add_argument("--input", required=True, metavar="PATH", help="history CSV")
    p.add_argument("--fom", choices=[k.value for k in FomKind], default="component_count", help="series to fit")
    p.add_argument("--reference-slope", type=float, default=1.0, help="reference doublings/year (default 1)")
    p.add_argument("--factor-threshold", type=float, default=2.0, help="deviation factor below reference (default 2)")
    p.add_argument("--consecutive", type=int, default=3, help="points in a row needed for deviation (default 3)")
    p.add_argument("--svg", metavar="PATH", help="write scatter + fit plot")
    p.add_argument("--annotate", action="append", metavar="LABEL,X,Y", help="extra labelled point on the plot")
    common(p, params=False)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("breakeven", help="break-even length between electrical and hybrid links")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--year", type=float, help="single calendar year")
    g.add_argument("--years", default=DEFAULT_YEARS, metavar="MIN:MAX:COUNT", help=f"year range (default {DEFAULT_YEARS})")
    p.add_argument("--lengths", default=DEFAULT_LENGTHS, metavar="MIN:MAX:COUNT[log]", help=f"search range (default {DEFAULT_LENGTHS})")
    p.add_argument("--rel-tol", type=float, default=1e-3, help="relative bracket tolerance (default 1e-3)")
    common(p)
    p.set_defaults(func=cmd_breakeven)

    p = sub.add_parser("surface", help="year x length CLEAR grid for both technologies")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--year", type=float, help="single calendar year")
    g.add_argument("--years", default=DEFAULT_YEARS, metavar="MIN:MAX:COUNT", help=f"year range (default {DEFAULT_YEARS})")
    p.add_argument("--lengths", default=DEFAULT_LENGTHS, metavar="MIN:MAX:COUNT[log]", help=f"length axis (default {DEFAULT_LENGTHS})")
    p.add_argument("--rel-tol", type=float, default=1e-3, help="relative bracket tolerance (default 1e-3)")
    p.add_argument("--crossing-out", metavar="PATH", help="write year,crossing_length_m CSV")
    p.add_argument("--svg", metavar="PATH", help="write surface map")
    p.add_argument("--annotate", action="append", metavar="LABEL,X,Y", help="extra labelled point (year, length)")
    common(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("select", help="pick a technology for an operating context")
    p.add_argument("--options", required=True, metavar="PATH", help="JSON list of labelled ClearFactors")
    p.add_argument("--context", metavar="PATH", help="OperatingContext JSON")
    p.add_argument("--policy", metavar="PATH", help="WeightPolicy JSON")
    p.add_argument("--level", choices=level_choices, default="link", help="hierarchy level (default link)")
    common(p, params=False, weights=False)
    p.set_defaults(func=cmd_select)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    text_out = io.StringIO()
    try:
        code = args.func(args, text_out)
    except (UsageError, ClearError, IncomparableFom) as exc:
        print(f"clearfom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = text_out.getvalue()
    if getattr(args, "out", None) and args.command != "surface":
        try:
            _save(args.out, report)
        except UsageError as exc:
            print(f"clearfom {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(report)
    return code


def entry() -> None:
    sys.exit(main())
