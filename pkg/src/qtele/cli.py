"""``qtele`` command line: point evaluation, sweeps and the validation battery.

Exit codes: 0 success, 1 validation failure, 2 usage or domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import sweep, validate
from .measures import QuadratureSpec
from .spin_model import ParamError

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _add_params(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("model and input parameters")
    group.add_argument("--J", type=float, help="spin coupling (default 1)")
    group.add_argument("--D", type=float, help="DM strength along z (default 0)")
    group.add_argument("--T", type=float, help="temperature, k = 1 (default 0.1)")
    group.add_argument("--theta", type=float, help="input amplitude angle (default pi/4)")
    group.add_argument("--phi", type=float, help="input phase (default 0)")
    group.add_argument("--r", type=float, help="acceleration parameter in [0, pi/4] (default 0)")
    group.add_argument("--deg", action="store_true", help="read theta, phi, r (and angle axes) in degrees")
    group.add_argument("--quad-theta", type=int, default=64, help="theta nodes for faq (default 64)")
    group.add_argument("--quad-phi", type=int, default=64, help="phi nodes for faq (default 64)")


def _given_params(args) -> dict[str, float]:
    params = {}
    for name in sweep.PARAM_NAMES:
        value = getattr(args, name)
        if value is None:
            continue
        if args.deg and name in sweep.ANGLE_NAMES:
            value = math.radians(value)
        params[name] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtele",
        description="Teleportation through a thermal Heisenberg XXX + DM channel with an accelerated input qubit.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one quantity at one point", allow_abbrev=False)
    ev.add_argument("--quantity", required=True, choices=sorted(sweep.QUANTITIES))
    _add_params(ev)

    sw = sub.add_parser("sweep", help="evaluate a quantity on a 2-D grid and write CSV", allow_abbrev=False)
    sw.add_argument("--figure", choices=sorted(sweep.PRESETS), help="start from a figure preset")
    sw.add_argument("--quantity", choices=sorted(sweep.QUANTITIES))
    sw.add_argument("--x", help="x axis as name:lo:hi:count")
    sw.add_argument("--y", help="y axis as name:lo:hi:count")
    sw.add_argument("--grid", type=int, help="points per axis (overrides axis counts)")
    sw.add_argument("--out", type=Path, help="output CSV path (default: standard output)")
    sw.add_argument("--jobs", type=int, default=1, help="worker threads (output does not depend on it)")
    _add_params(sw)

    sub.add_parser("validate", help="run the closed-form vs oracle cross-checks")
    return parser


def _cmd_eval(args) -> int:
    quad = QuadratureSpec(args.quad_theta, args.quad_phi)
    value = sweep.evaluate(args.quantity, _given_params(args), quad)
    print(f"{value:.12f}")
    return EXIT_OK


def _sweep_spec(args) -> sweep.SweepSpec:
    if args.figure:
        base = sweep.preset_spec(args.figure)
        x, y, quantity, fixed = base.x, base.y, base.quantity, dict(base.fixed)
    else:
        if not (args.x and args.y and args.quantity):
            raise ParamError("sweep needs --figure, or all of --x, --y and --quantity")
        x = y = None
        quantity, fixed = args.quantity, {}
    if args.x:
        x = sweep.Axis.parse(args.x, args.deg)
    if args.y:
        y = sweep.Axis.parse(args.y, args.deg)
    if args.quantity:
        quantity = args.quantity
    if args.grid is not None:
        x, y = x.with_count(args.grid), y.with_count(args.grid)
    fixed.update(_given_params(args))
    for name in (x.name, y.name):
        fixed.pop(name, None)
    return sweep.SweepSpec(x, y, quantity, fixed)


def _cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    quad = QuadratureSpec(args.quad_theta, args.quad_phi)
    text = sweep.format_csv(spec, sweep.run_sweep(spec, quad, jobs=max(1, args.jobs)))
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"qtele: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_validate(args) -> int:
    results = validate.run_all()
    sys.stdout.write(validate.format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"eval": _cmd_eval, "sweep": _cmd_sweep, "validate": _cmd_validate}[args.command]
    try:
        return handler(args)
    except ParamError as exc:
        print(f"qtele: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
