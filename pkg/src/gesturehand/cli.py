"""Command-line interface.

Subcommands: validate, analyze, compile, bench, export, serve. Exit codes:
0 = success / all checks pass, 1 = validation or benchmark failure,
2 = usage, I/O, or document-schema error.
"""
from __future__ import annotations

import argparse
import csv
import io
import shutil
import sys
from pathlib import Path

from . import __version__
from .actuation import export_actuator_csv, fit_linear
from .benchmark import BenchmarkLevel, load_suite, run_suite
from .choreography import (
    compile_script,
    export_trajectory_csv,
    load_script,
    trajectory_metrics,
    validate_trajectory,
)
from .defaults import (
    default_coupling,
    default_gestures_path,
    default_hand_spec_path,
    default_scripts_dir,
    default_suite_path,
    load_default_hand_spec,
)
from .errors import CompileError, FitError, GestureHandError, SchemaError
from .gestures import load_gesture_set
from .hand_model import (
    DigitId,
    coverage_table,
    fingertip_trajectory,
    flexion_plane_coords,
    load_hand_spec,
    log_spiral_fit,
    rom_coverage,
)
from .jsonio import canonical_json

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_context(args):
    spec = load_hand_spec(args.hand_spec) if args.hand_spec else load_default_hand_spec()
    coupling = default_coupling(spec)
    gestures_path = args.gestures
    if gestures_path in (None, "default"):
        gestures_path = default_gestures_path()
    gesture_set = load_gesture_set(gestures_path, spec, strict=False)
    return spec, coupling, gesture_set


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    spec, coupling, gesture_set = _load_context(args)
    if args.script:
        script = load_script(args.script)
        trajectory = compile_script(script, gesture_set, spec, coupling)
        report = validate_trajectory(trajectory, spec, coupling, args.max_step)
        problems = report.problems()
        if problems:
            for problem in problems:
                print(f"FAIL {script.name}: {problem}")
            return EXIT_VALIDATION
        print(f"{script.name} OK ({len(trajectory.frames)} frames)")
        return EXIT_OK
    if gesture_set.load_warnings:
        for warning in gesture_set.load_warnings:
            print(f"FAIL {warning}")
        return EXIT_VALIDATION
    print(f"{len(gesture_set)} gestures OK")
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze


def _analyze_coverage(args, spec) -> int:
    pairs = (("ours", "human"), ("ours", "grasping"))
    doc = {}
    for target, reference in pairs:
        entry = {}
        for aggregation in ("per-joint-mean", "length-weighted"):
            for absent in ("exclude-absent", "include-absent-as-zero"):
                value = rom_coverage(spec, target, reference, aggregation, absent)
                entry[f"{aggregation}/{absent}"] = value
        doc[f"{target}_vs_{reference}"] = entry
    if args.format == "json":
        _emit(canonical_json(doc), args.output)
        return EXIT_OK
    lines = []
    for pair, entry in doc.items():
        lines.append(pair)
        for scheme, value in entry.items():
            lines.append(f"  {scheme}: {100 * value:.1f}%")
    lines.append("")
    lines.append("per-joint ratios (ours vs human / ours vs grasping):")
    human_rows = coverage_table(spec, "ours", "human")
    grasp_rows = coverage_table(spec, "ours", "grasping")
    for h, g in zip(human_rows, grasp_rows):
        label = f"{h.digit.display}.{h.role.display}"
        hr = "absent" if h.ratio is None else f"{h.ratio:.3f}"
        gr = "absent" if g.ratio is None else f"{g.ratio:.3f}"
        lines.append(f"  {label:<20} {hr:>8} {gr:>8}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _analyze_trajectory(args, spec, coupling) -> int:
    digit = DigitId[args.digit.upper()]
    tips = fingertip_trajectory(spec, digit, coupling, args.samples)
    fit = log_spiral_fit(flexion_plane_coords(tips))
    buf = io.StringIO()
    buf.write("sample,x_mm,y_mm,z_mm\n")
    for i, (x, y, z) in enumerate(tips):
        buf.write(f"{i},{x:.6g},{y:.6g},{z:.6g}\n")
    summary = (
        f"spiral fit ({digit.key}): a={fit.a:.6g} b={fit.b:.6g} "
        f"r_squared={fit.r_squared:.6g}"
    )
    if args.output and args.output != "-":
        _emit(buf.getvalue(), args.output)
        print(summary)
    else:
        sys.stdout.write(buf.getvalue())
        print(f"# {summary}")
    return EXIT_OK


def _analyze_tendon(args, spec) -> int:
    if not args.data:
        print("error: analyze tendon requires --data CSV", file=sys.stderr)
        return EXIT_USAGE
    groups: dict[str, tuple[list, list]] = {}
    with open(args.data, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"joint", "excursion_mm", "angle_deg"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            print(
                f"error: {args.data}: expected CSV columns {sorted(required)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        try:
            for row in reader:
                e, phi = groups.setdefault(row["joint"], ([], []))
                e.append(float(row["excursion_mm"]))
                phi.append(float(row["angle_deg"]))
        except (TypeError, ValueError) as exc:
            print(f"error: {args.data}: malformed row: {exc}", file=sys.stderr)
            return EXIT_USAGE
    doc = {}
    for joint, (e, phi) in sorted(groups.items()):
        try:
            fit = fit_linear(e, phi)
        except FitError as exc:
            print(f"error: joint {joint}: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        doc[joint] = {"a": fit.a, "b": fit.b, "r_squared": fit.r_squared}
    if args.format == "json":
        _emit(canonical_json(doc), args.output)
    else:
        lines = [
            f"{joint}: a={v['a']:.6g} b={v['b']:.6g} r_squared={v['r_squared']:.6g}"
            for joint, v in doc.items()
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    spec, coupling, _ = _load_context(args)
    if args.analysis == "coverage":
        return _analyze_coverage(args, spec)
    if args.analysis == "trajectory":
        return _analyze_trajectory(args, spec, coupling)
    return _analyze_tendon(args, spec)


# ---------------------------------------------------------------------------
# compile


def cmd_compile(args) -> int:
    spec, coupling, gesture_set = _load_context(args)
    script = load_script(args.script)
    trajectory = compile_script(script, gesture_set, spec, coupling)
    report = validate_trajectory(trajectory, spec, coupling, args.max_step)
    metrics = trajectory_metrics(trajectory)

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.script).stem
    trajectory_path = Path(args.trajectory_csv) if args.trajectory_csv else out_dir / f"{stem}_trajectory.csv"
    actuator_path = Path(args.actuator_csv) if args.actuator_csv else out_dir / f"{stem}_actuators.csv"
    trajectory_path.write_text(export_trajectory_csv(trajectory), encoding="utf-8")
    actuator_path.write_text(export_actuator_csv(trajectory, coupling, spec), encoding="utf-8")

    print(f"wrote {trajectory_path}")
    print(f"wrote {actuator_path}")
    print(
        f"{script.name}: {metrics.frame_count} frames, {metrics.gesture_count} gestures, "
        f"{metrics.duration_s:g} s at {script.frame_rate_fps:g} fps"
    )
    problems = report.problems()
    for problem in problems:
        print(f"FAIL {problem}")
    return EXIT_VALIDATION if problems else EXIT_OK


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args) -> int:
    spec, coupling, gesture_set = _load_context(args)
    suite_path = args.suite or default_suite_path()
    tasks = load_suite(suite_path)
    if args.level:
        wanted = {1: BenchmarkLevel.L1_SINGLE, 2: BenchmarkLevel.L2_COMPLEX, 3: BenchmarkLevel.L3_CCM}[args.level]
        tasks = [t for t in tasks if t.level == wanted]
    report = run_suite(tasks, gesture_set, spec, coupling)
    if args.format == "json":
        _emit(canonical_json(report.to_document()), args.output)
    else:
        _emit(report.render_text(), args.output)
    return EXIT_OK if report.all_passed else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# export


def cmd_export(args) -> int:
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    what = args.what
    copied = []
    if what in ("all", "hand-spec"):
        copied.append(shutil.copy(default_hand_spec_path(), out_dir / "hand_spec.json"))
    if what in ("all", "gestures"):
        copied.append(shutil.copy(default_gestures_path(), out_dir / "gestures.json"))
    if what in ("all", "suite"):
        copied.append(shutil.copy(default_suite_path(), out_dir / "suite.json"))
    if what in ("all", "scripts"):
        scripts_out = out_dir / "scripts"
        scripts_out.mkdir(exist_ok=True)
        for path in sorted(default_scripts_dir().glob("*.json")):
            copied.append(shutil.copy(path, scripts_out / path.name))
    for path in copied:
        print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(hand_spec_path=args.hand_spec, gestures_path=args.gestures)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_data_options(p: argparse.ArgumentParser) -> None:
    # Also accepted after the subcommand; SUPPRESS keeps a value given before
    # the subcommand from being clobbered by the subparser default.
    p.add_argument("--hand-spec", default=argparse.SUPPRESS,
                   help="path to a hand-spec JSON (default: shipped)")
    p.add_argument("--gestures", default=argparse.SUPPRESS,
                   help="path to a gesture-set JSON, or 'default' (default: shipped)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gesturehand",
        description="Kinematic simulator and choreography engine for a 13-DOA hand",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--hand-spec", help="path to a hand-spec JSON (default: shipped)")
    parser.add_argument(
        "--gestures", help="path to a gesture-set JSON, or 'default' (default: shipped)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate the gesture set or a script")
    _add_data_options(p)
    p.add_argument("--script", help="validate this manipulation script instead")
    p.add_argument("--max-step", type=float, default=5.0, help="per-frame step limit in degrees")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="ROM coverage, fingertip trajectory, tendon regression")
    _add_data_options(p)
    p.add_argument("analysis", choices=("coverage", "trajectory", "tendon"))
    p.add_argument("--digit", default="index", choices=[d.key for d in DigitId])
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--data", help="CSV of joint,excursion_mm,angle_deg (tendon analysis)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compile", help="compile a script to trajectory + actuator CSVs")
    _add_data_options(p)
    p.add_argument("script", help="manipulation script JSON")
    p.add_argument("--output-dir", default=".")
    p.add_argument("--trajectory-csv", help="explicit trajectory CSV path")
    p.add_argument("--actuator-csv", help="explicit actuator CSV path")
    p.add_argument("--max-step", type=float, default=5.0)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("bench", help="run the benchmark suite")
    _add_data_options(p)
    p.add_argument("--suite", help="suite JSON (default: shipped corpus)")
    p.add_argument("--level", type=int, choices=(1, 2, 3), help="run only this level")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report to this file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", help="copy the shipped datasets to a directory")
    p.add_argument("--what", choices=("all", "hand-spec", "gestures", "scripts", "suite"), default="all")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    _add_data_options(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CompileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GestureHandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
