"""Command-line front end.

Exit codes: 0 success (feasible), 2 infeasible scenario, 1 any error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from .calibration import (
    CalibrationError,
    extract_k,
    fit_f_loss_by_bound,
    read_incline_csv,
    read_trace_csv,
    synthetic_force_trace,
    synthetic_incline_records,
    write_incline_csv,
    write_trace_csv,
)
from .core import CONFIG_ENV_VAR, PayloadSpec, ROBOT_DIMENSIONS, reference_robot, robot_to_dict
from .scenario import ScenarioError, load_scenario
from .simulator import simulate
from .sweep import AXES, MODELS, SweepError, sweep, sweep_range
from .units import UnitError, parse_quantity, tag

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class CliError(Exception):
    pass


@contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"no such file: {path}")
    return p


def _base_robot(args):
    return reference_robot(args.config) if args.config else reference_robot()


def cmd_check(args) -> int:
    scenario = load_scenario(_existing(args.scenario), _base_robot(args))
    report = simulate(scenario.robot, scenario.train, scenario.course, scenario.step,
                      scenario.policy, scenario.options)
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(report.to_json() + "\n")
        else:
            out.write(report.to_text(args.units) + "\n")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_sweep(args) -> int:
    scenario = load_scenario(_existing(args.scenario), _base_robot(args))
    dimension = AXES.get(args.axis)
    if dimension is None:
        raise CliError(f"unknown axis {args.axis!r}; choose from {', '.join(AXES)}")
    lo = parse_quantity(args.min, dimension)
    hi = parse_quantity(args.max, dimension)
    table = sweep(args.axis, sweep_range(lo, hi, args.steps), scenario, args.model)
    with _sink(args.output) as out:
        out.write(table.to_csv(args.units))
    return EXIT_OK


def cmd_fit(args) -> int:
    path = _existing(args.data)
    robot = _base_robot(args)
    if args.kind == "floss":
        fits = fit_f_loss_by_bound(read_incline_csv(path), robot)
        result = {name: {"f_loss_N": f.intercept, "slope": f.slope, "r_squared": f.r_squared,
                         "n_points": f.n_points} for name, f in fits.items()}
    else:
        fit = extract_k(read_trace_csv(path))
        result = {"all": {"k_N_per_kPa": fit.slope * 1e3, "k_N_per_Pa": fit.slope,
                          "intercept_N": fit.intercept, "r_squared": fit.r_squared, "n_points": fit.n_points}}
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
        else:
            for name, values in result.items():
                parts = ", ".join(f"{k}={v:.6g}" for k, v in values.items())
                out.write(f"{name}: {parts}\n")
    return EXIT_OK


def cmd_info(args) -> int:
    if args.scenario:
        robot = load_scenario(_existing(args.scenario), _base_robot(args)).robot
    else:
        robot = _base_robot(args)
    resolved = {name: tag(value, ROBOT_DIMENSIONS[name], args.units) for name, value in robot_to_dict(robot).items()}
    with _sink(args.output) as out:
        out.write(json.dumps({"robot": resolved}, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_synth(args) -> int:
    robot = _base_robot(args)
    if args.kind == "incline":
        masses = [0.1 * k for k in range(1, 16)]
        thetas = [math.radians(a) for a in (30, 45, 60, 90)]
        write_incline_csv(args.output, synthetic_incline_records(robot, masses, thetas))
    else:
        payload = PayloadSpec.cylinder(0.04, 0.20, mu_surface=0.27)
        pressures = [5000.0 - 50.0 * k for k in range(81)]
        write_trace_csv(args.output, synthetic_force_trace(robot, payload, pressures))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vinepayload", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help=f"reference config JSON (default: ${CONFIG_ENV_VAR} or bundled)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=None):
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--units", choices=("si", "paper"), default="si", help="display units")
        if formats:
            p.add_argument("--format", choices=formats, default=formats[0])

    p = sub.add_parser("check", help="simulate a scenario and report feasibility")
    p.add_argument("--scenario", required=True)
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="tabulate a model curve along one axis")
    p.add_argument("--scenario", required=True)
    p.add_argument("--axis", required=True, help=", ".join(AXES))
    p.add_argument("--model", choices=sorted(MODELS), help="defaults depend on the axis")
    p.add_argument("--min", required=True, help="SI number or tagged value, e.g. '0.5 kPa'")
    p.add_argument("--max", required=True)
    p.add_argument("--steps", type=int, required=True)
    common(p, ("csv",))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="calibrate F_loss or K from a CSV file")
    p.add_argument("kind", choices=("floss", "k"))
    p.add_argument("data")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("info", help="print the resolved robot configuration")
    p.add_argument("--scenario")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("synth", help="write a noiseless synthetic calibration CSV")
    p.add_argument("kind", choices=("incline", "trace"))
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, ScenarioError, CalibrationError, SweepError, UnitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
