"""Command line interface: ``ratsys simulate|closed|verify|period``.

Exit codes: 0 success, 2 usage or configuration error, 3 forbidden set met
by a closed-form query, 4 verification failure.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from . import closedform as cf
from .coeffs import CoefficientError, CoefficientSpec, IndexOutOfRange, TABULATED, load_coefficients, parse_constants
from .exact import format_rational, parse_rational
from .orbit import InitialState, iterate, orbit_csv
from .periodicity import InsufficientWindow, period_report
from .reduction import track_csv, uv_from_orbit
from .verification import MODES, run_verify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


class ConfigError(Exception):
    pass


def _add_coefficients(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--const", metavar="a=..,b=..,c=..,d=..", help="constant coefficients")
    src.add_argument("--periodic", metavar="FILE", type=Path, help="coefficient file (no @table lines)")
    src.add_argument("--table", metavar="FILE", type=Path, help="coefficient file, tables allowed")
    p.add_argument("--init", required=True, metavar="x-2,x-1,x0,y-2,y-1,y0",
                   help="six nonzero initial values; write --init=-1,... if the first is negative")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratsys", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="iterate the system and print CSV")
    _add_coefficients(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--float", action="store_true", help="add lossy x_float,y_float columns")
    p.add_argument("--invariants", action="store_true", help="print n,U,V instead of n,x,y")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("closed", help="evaluate one closed-form solution value")
    _add_coefficients(p)
    p.add_argument("--n", type=int, help="block index, solution index is 4n+j")
    p.add_argument("--j", type=int, choices=cf.RESIDUES)
    p.add_argument("--index", type=int, help="absolute solution index m (instead of --n/--j)")
    p.add_argument("--component", choices=("x", "y"), required=True)
    p.add_argument("--branch", choices=("auto",) + cf.BRANCHES, default="auto")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="randomised exact cross-checks")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--t", default="2", help="group parameter p/q for --mode symmetry")
    p.add_argument("--symmetry", metavar="t=p/q", help="shorthand for --mode symmetry --t p/q")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("period", help="theorem conditions and detected period")
    _add_coefficients(p)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--max-period", type=int, default=8)
    p.add_argument("--window-factor", type=int, default=3,
                   help="require at least FACTOR * max-period orbit values")
    p.add_argument("--line", action="store_true", help="print only the machine-readable line")
    p.add_argument("--out", type=Path)
    return parser


def _coefficients(args) -> CoefficientSpec:
    try:
        if args.const is not None:
            return parse_constants(args.const)
        if args.periodic is not None:
            spec = load_coefficients(args.periodic)
            if spec.kind == TABULATED:
                raise ConfigError("--periodic file contains @table sequences; use --table")
            return spec
        return load_coefficients(args.table)
    except (CoefficientError, OSError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _init(args) -> InitialState:
    try:
        return InitialState.parse(args.init)
    except ValueError as exc:
        raise ConfigError(f"--init: {exc}") from None


@contextmanager
def _output(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_simulate(args) -> int:
    spec, init = _coefficients(args), _init(args)
    if args.steps < 0:
        raise ConfigError("--steps must be >= 0")
    try:
        orbit = iterate(spec, init, args.steps)
    except IndexOutOfRange as exc:
        raise ConfigError(str(exc)) from None
    if args.invariants:
        if orbit.last < 1:
            raise ConfigError("--invariants needs at least 1 completed step")
        text = track_csv(uv_from_orbit(orbit)) + orbit.status_line() + "\n"
    else:
        text = orbit_csv(orbit, floats=args.float)
    with _output(args.out) as out:
        out.write(text)
    return EXIT_OK


def cmd_closed(args) -> int:
    spec, init = _coefficients(args), _init(args)
    branch = cf.choose_branch(spec) if args.branch == "auto" else args.branch
    try:
        if args.index is not None:
            if args.n is not None or args.j is not None:
                raise ConfigError("give either --index or --n/--j, not both")
            q = cf.ClosedFormQuery.at(args.index, args.component, branch)
        else:
            if args.n is None or args.j is None:
                raise ConfigError("need --n and --j (or --index)")
            q = cf.ClosedFormQuery(args.n, args.j, args.component, branch)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    try:
        value = cf.evaluate(spec, init, q)
    except cf.DenominatorVanished as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"denominator vanished at block s={exc.s}", file=sys.stderr)
        return EXIT_DOMAIN
    except (cf.BranchMismatch, IndexOutOfRange) as exc:
        raise ConfigError(str(exc)) from None
    with _output(args.out) as out:
        out.write(f"{q.component}[{q.index}] = {format_rational(value)}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.symmetry is not None:
        if args.mode not in (None, "symmetry"):
            raise ConfigError("--symmetry conflicts with --mode " + args.mode)
        args.mode = "symmetry"
        args.t = args.symmetry.removeprefix("t=")
    if args.mode is None:
        raise ConfigError("need --mode (or --symmetry t=p/q)")
    try:
        t = parse_rational(args.t)
    except ValueError as exc:
        raise ConfigError(f"--t: {exc}") from None
    if t == 0:
        raise ConfigError("--t must be nonzero")
    if args.trials < 0 or args.nmax < 0:
        raise ConfigError("--trials and --nmax must be >= 0")
    result = run_verify(args.mode, args.trials, args.seed, args.nmax, Fraction(t), jobs=args.jobs)
    with _output(args.out) as out:
        out.write(
            f"mode={result.mode} trials={result.trials} seed={args.seed} nmax={args.nmax}"
            + (f" t={format_rational(t)}" if args.mode == "symmetry" else "")
            + "\n"
        )
        out.write(f"{result.passed}/{result.trials} pass\n")
        if result.failures:
            index, example = result.failures[0]
            out.write(f"first failure at trial {index}\n{example.render()}\n")
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_period(args) -> int:
    spec, init = _coefficients(args), _init(args)
    try:
        report = period_report(spec, init, args.steps, args.max_period, args.window_factor)
    except (InsufficientWindow, IndexOutOfRange, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    with _output(args.out) as out:
        if not args.line:
            labels = {
                "period2": "period-2 theorem conditions",
                "period4": "period-4 theorem conditions",
                "remark": "period-4 remark conditions",
            }
            rows = [("detected minimal period", str(report.detected or "none")),
                    ("orbit values checked", str(report.window))]
            for key, label in labels.items():
                v = report.conditions.get(key)
                rows.append((label, "undefined (b = 0)" if v is None else str(v).lower()))
            width = max(len(r[0]) for r in rows)
            for label, value in rows:
                out.write(f"{label:<{width}}  {value}\n")
        out.write(report.line() + "\n")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "closed": cmd_closed,
    "verify": cmd_verify,
    "period": cmd_period,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
