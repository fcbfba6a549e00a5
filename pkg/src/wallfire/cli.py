"""Batch front end: run, sweep, check, list-scenarios.

All data outputs are plain CSV (single header row) or flat key = value
summaries, deterministic byte-for-byte for identical inputs: fixed float
formatting via repr(), fixed row orders, no timestamps.

Exit codes: 0 success, 1 usage or parse error, 2 solver hard error,
3 analysis finished without reaching failure (horizon too short).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fire import ExposureConfig, Iso834
from .materials import Aggregate, ConcreteLaw
from .rules import CheckStatus, ComplianceReport, check_wall
from .scenario_io import ScenarioParseError, parse_scenario_file
from .scenarios import WallScenario, builtin_scenario, builtin_scenarios
from .structural import (
    Component,
    FailureMode,
    FireResistanceResult,
    run_to_failure,
)
from .thermal import (
    Probe,
    TemperatureHistory,
    ThermalConvergenceError,
    build_section_mesh,
    solve_thermal,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_NO_FAILURE = 3

_REPORT_NODES = (3, 11, 21)


def _fmt(x: float) -> str:
    return repr(float(x))


def resolve_scenario(source: str) -> WallScenario:
    """A --scenario value is a built-in name or a path to a scenario file."""
    try:
        return builtin_scenario(source)
    except KeyError:
        pass
    path = Path(source)
    if path.exists():
        return parse_scenario_file(path)
    names = ", ".join(repr(s.name) for s in builtin_scenarios())
    raise ScenarioParseError(
        f"{source!r} is neither a built-in scenario ({names}) nor an existing file"
    )


def _concrete_law(s: WallScenario, args) -> ConcreteLaw:
    return ConcreteLaw(
        f_ck=s.concrete_strength_char,
        aggregate=Aggregate(args.aggregate),
        moisture_pct=args.moisture,
        conductivity_bound=args.conductivity,
    )


def _exposure(s: WallScenario, args) -> ExposureConfig:
    return ExposureConfig.for_exposure(
        s.exposure,
        h_exposed=args.h_exposed,
        h_unexposed=args.h_unexposed,
        emissivity=args.emissivity,
    )


def _solve_history(s: WallScenario, args) -> TemperatureHistory:
    mesh = build_section_mesh(s, n_through=args.mesh, n_width=args.width_cells)
    return solve_thermal(
        s,
        Iso834(),
        _exposure(s, args),
        dt=args.dt,
        t_end=args.t_end,
        mesh=mesh,
        law=_concrete_law(s, args),
    )


def _write_temperatures(history: TemperatureHistory, path: Path) -> None:
    probes = [
        ("face1_surface_C", Probe.FACE1_SURFACE),
        ("face2_surface_C", Probe.FACE2_SURFACE),
        ("mid_depth_C", Probe.MID_DEPTH),
        ("rebar_face1_C", Probe.REBAR_FACE1),
        ("rebar_face2_C", Probe.REBAR_FACE2),
    ]
    with open(path, "w") as f:
        f.write("time_s," + ",".join(name for name, _ in probes) + "\n")
        for t in history.times:
            vals = [history.probe(float(t), p) for _, p in probes]
            f.write(_fmt(t) + "," + ",".join(_fmt(v) for v in vals) + "\n")


def _write_displacements(result: FireResistanceResult, path: Path) -> None:
    cols = []
    for node in _REPORT_NODES:
        cols.append((f"node{node}_horizontal_m", node, Component.HORIZONTAL))
        cols.append((f"node{node}_vertical_m", node, Component.VERTICAL))
    with open(path, "w") as f:
        f.write("time_s," + ",".join(name for name, _, _ in cols) + "\n")
        for k, t in enumerate(result.times):
            vals = [
                result.series(node, comp)[1][k] for _, node, comp in cols
            ]
            f.write(_fmt(t) + "," + ",".join(_fmt(v) for v in vals) + "\n")


def _write_summary(result: FireResistanceResult, args, path: Path) -> None:
    s = result.scenario
    lines = [
        f"scenario = {s.name}",
        f"exposure = {s.exposure.value}",
        f"load_ratio = {_fmt(s.load_ratio)}",
        f"strip_axial_load_N = {_fmt(_strip_axial(s))}",
        f"strip_moment_Nm = {_fmt(_strip_moment(s))}",
        f"failure_mode = {result.failure_mode.value}",
        f"rf_s = {'none' if result.rf is None else _fmt(result.rf)}",
        f"rf_min = {'none' if result.rf is None else _fmt(result.rf / 60.0)}",
        f"peak_midheight_horizontal_m = {_fmt(result.peak_mid_height_horizontal)}",
        f"top_vertical_at_end_m = {_fmt(result.top_vertical_at_end)}",
        f"horizon_s = {_fmt(result.horizon)}",
        f"mesh_n_through = {args.mesh}",
        f"mesh_n_width = {args.width_cells}",
        f"dt_s = {_fmt(args.dt)}",
    ]
    path.write_text("\n".join(lines) + "\n")


def _strip_axial(s: WallScenario) -> float:
    from .scenarios import strip_resultants

    return strip_resultants(s).axial_load


def _strip_moment(s: WallScenario) -> float:
    from .scenarios import strip_resultants

    return strip_resultants(s).moment


def _run_one(s: WallScenario, args, out_dir: Path) -> tuple[int, FireResistanceResult]:
    out_dir.mkdir(parents=True, exist_ok=True)
    history = _solve_history(s, args)
    result = run_to_failure(s, history, concrete=_concrete_law(s, args))
    _write_temperatures(history, out_dir / "temperatures.csv")
    _write_displacements(result, out_dir / "displacements.csv")
    _write_summary(result, args, out_dir / "summary.txt")
    code = EXIT_OK if result.failed else EXIT_NO_FAILURE
    return code, result


def cmd_run(args) -> int:
    s = resolve_scenario(args.scenario)
    if args.load_ratio is not None:
        s = s.with_load_ratio(args.load_ratio)
    code, result = _run_one(s, args, Path(args.out))
    if result.failed:
        print(
            f"{s.name}: Rf = {result.rf:.0f} s ({result.rf / 60.0:.2f} min), "
            f"mode = {result.failure_mode.value}"
        )
    else:
        print(
            f"{s.name}: no failure within {result.horizon:.0f} s horizon; "
            f"rerun with a larger --t-end"
        )
    return code


def cmd_sweep(args) -> int:
    s = resolve_scenario(args.scenario)
    try:
        ratios = sorted(
            {float(tok) for tok in args.ratios.split(",") if tok.strip()},
            reverse=True,
        )
    except ValueError:
        print(f"bad --ratios value: {args.ratios!r}", file=sys.stderr)
        return EXIT_USAGE
    if not ratios or any(not 0 < r <= 1 for r in ratios):
        print("--ratios must be a nonempty list within (0, 1]", file=sys.stderr)
        return EXIT_USAGE

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    worst = EXIT_OK
    for ratio in ratios:
        sr = s.with_load_ratio(ratio)
        sub = out_dir / f"ratio_{ratio:g}"
        try:
            code, result = _run_one(sr, args, sub)
        except (ThermalConvergenceError, RuntimeError) as exc:
            print(f"ratio {ratio:g}: solver error: {exc}", file=sys.stderr)
            rows.append((ratio, None, "solver_error"))
            worst = EXIT_SOLVER
            continue
        if result.failed:
            rows.append((ratio, result.rf, "failed"))
        else:
            rows.append((ratio, None, "no_failure_within_horizon"))
            worst = max(worst, EXIT_NO_FAILURE)

    with open(out_dir / "sweep.csv", "w") as f:
        f.write("load_ratio,rf_s,rf_min,status\n")
        for ratio, rf, status in rows:
            rf_s = "none" if rf is None else _fmt(rf)
            rf_min = "none" if rf is None else _fmt(rf / 60.0)
            f.write(f"{_fmt(ratio)},{rf_s},{rf_min},{status}\n")

    for ratio, rf, status in rows:
        shown = "-" if rf is None else f"{rf / 60.0:.2f} min"
        print(f"ratio {ratio:g}: Rf = {shown} ({status})")
    return worst


def _report_text(report: ComplianceReport) -> str:
    sl = report.slenderness
    sp = report.span_rule
    lines = [
        f"scenario = {report.scenario_name}",
        f"degree_rating = {report.degree_rating}",
        f"min_thickness = {report.min_thickness.value}",
        f"slenderness = {_fmt(sl.slenderness)}",
        f"slenderness_check = {sl.status.value}",
        f"cellular_height_limit_m = "
        + ("none" if report.cellular_height_limit_m is None
           else _fmt(report.cellular_height_limit_m)),
        f"cellular_height_check = {report.cellular_height.value}",
        f"span_reduction_factor = {_fmt(sp.reduction_factor)}",
        f"span_reduced_m = {_fmt(sp.reduced_span)}",
        f"span_columns_to_add = {sp.columns_to_add}",
        f"span_segment_m = {_fmt(sp.segment_length)}",
        f"span_check = {report.span_rule_status.value}",
        f"all_applicable_pass = {str(report.all_applicable_pass).lower()}",
    ]
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    s = resolve_scenario(args.scenario)
    report = check_wall(s)
    text = _report_text(report)
    print(text, end="")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "compliance.txt").write_text(text)
    return EXIT_OK if report.all_applicable_pass else EXIT_USAGE


def cmd_list(_args) -> int:
    for s in builtin_scenarios():
        print(
            f"{s.name}: H = {s.height} m, span = {s.span} m, e = {s.thickness} m, "
            f"bar = {s.rebar_diameter:g} mm, cover = {s.cover} m, "
            f"{s.exposure.value}, N = {s.axial_load_total} t, "
            f"M = {s.moment_total} t.m"
        )
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, with_thermal: bool = True) -> None:
    p.add_argument("--scenario", required=True, help="built-in name or file path")
    if with_thermal:
        p.add_argument("--t-end", type=float, default=36000.0, help="horizon, s")
        p.add_argument("--dt", type=float, default=12.0, help="thermal step, s")
        p.add_argument("--mesh", type=int, default=20, help="through-thickness cells")
        p.add_argument("--width-cells", type=int, default=1)
        p.add_argument(
            "--aggregate", choices=["siliceous", "calcareous"], default="siliceous"
        )
        p.add_argument("--moisture", type=float, default=1.5, help="%% by weight")
        p.add_argument("--conductivity", choices=["lower", "upper"], default="upper")
        p.add_argument("--h-exposed", type=float, default=25.0)
        p.add_argument("--h-unexposed", type=float, default=9.0)
        p.add_argument("--emissivity", type=float, default=0.4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallfire",
        description="Fire resistance analysis and firewall rule checks for "
        "reinforced-concrete walls",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="thermal + structural analysis of one wall")
    _add_common(p_run)
    p_run.add_argument("--load-ratio", type=float, default=None)
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="repeat the run over load ratios")
    _add_common(p_sweep)
    p_sweep.add_argument("--ratios", default="1.0,0.7,0.5,0.3")
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_check = sub.add_parser("check", help="prescriptive firewall rule checks")
    _add_common(p_check, with_thermal=False)
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(func=cmd_check)

    p_list = sub.add_parser("list-scenarios", help="show the built-in walls")
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses its own codes; normalise to 1
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ThermalConvergenceError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except RuntimeError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    raise SystemExit(main())
