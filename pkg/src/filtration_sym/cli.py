"""Command-line front end.

Every command prints a JSON-lines report on stdout and its wall time on
stderr.  Exit status: 0 all checks pass, 1 some check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .errors import FiltrationSymError, UsageError
from .lie_matrix import Case, GroupElement, GroupSpec
from .pde_check import ArctanExp, Exp, Generic, KSpec, Power, default_grid
from .scalar_field import Rectangle, ScalarField, linear, sample_grid, separable_exp, separable_power
from .suites import (
    case4_sweep,
    verify_action,
    verify_generators,
    verify_group,
    verify_invariance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _spec(args) -> GroupSpec:
    case = Case(args.case.upper())
    if case is Case.G3:
        if args.n is None:
            raise UsageError("--case g3 requires --n")
        return GroupSpec(case, args.n)
    return GroupSpec(case)


def _field(src: str) -> ScalarField:
    return ScalarField.from_expression(src)


def _k(src: str, n: float | None) -> KSpec:
    if src == "exp":
        return Exp()
    if src in ("power", "arctan-exp"):
        if n is None:
            raise UsageError(f"--k {src} requires --n")
        return Power(n) if src == "power" else ArctanExp(n)
    if src.startswith("generic:"):
        return Generic.from_expression(src[len("generic:"):])
    raise UsageError(f"unknown --k {src!r}; use exp, power, arctan-exp or generic:EXPR")


def _numbers(text: str, count: int | None, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        values = []
    if not values or (count is not None and len(values) != count):
        expected = "comma-separated numbers" if count is None else f"{count} comma-separated numbers"
        raise UsageError(f"{what}: expected {expected}, got {text!r}")
    return values


def _solution(src: str, n: float | None) -> ScalarField:
    kind, _, rest = src.partition(":")
    if kind == "linear":
        return linear(*_numbers(rest, 2, "linear"))
    if kind == "sep-exp":
        return separable_exp(*_numbers(rest, 2, "sep-exp"))
    if kind == "sep-power":
        if n is None:
            raise UsageError("sep-power solutions require --n")
        return separable_power(*_numbers(rest, 2, "sep-power"), n)
    raise UsageError(f"unknown --solution {src!r}; use linear:a,b, sep-exp:a,c or sep-power:a,c")


def cmd_verify_group(args):
    return verify_group(_spec(args), args.trials, args.seed), None


def cmd_verify_action(args):
    field = _field(args.field) if args.field is not None else None
    return verify_action(_spec(args), field, args.trials, args.seed), None


def cmd_verify_generators(args):
    if not args.eps > 0:
        raise UsageError("--eps must be positive")
    return verify_generators(_spec(args), args.eps, args.points, args.seed), None


def cmd_invariance(args):
    spec = _spec(args)
    k = _k(args.k, args.n)
    f = _solution(args.solution, args.n)
    g = GroupElement(spec, q=args.q, r=args.r, t=args.t0, x=args.x0, s=args.s0)
    if args.box is not None:
        t0, t1, x0, x1 = _numbers(args.box, 4, "--box")
        grid = sample_grid(Rectangle(t0, t1, x0, x1), args.grid, margin=0.0)
    else:
        grid = default_grid(f, g, args.grid)
    return verify_invariance(f, k, g, grid, args.h, args.stencil), None


def cmd_case4(args):
    if (args.line is None) == (args.field is None):
        raise UsageError("give exactly one of --line a,b or --field EXPR")
    lo, hi = args.eps_min, args.eps_max
    if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi) or args.eps_steps < 1:
        raise UsageError("eps sweep needs finite --eps-min <= --eps-max and --eps-steps >= 1")
    eps_values = np.linspace(lo, hi, args.eps_steps)
    if args.include is not None:
        eps_values = np.unique(np.concatenate([eps_values, _numbers(args.include, None, "--include")]))
    line = tuple(_numbers(args.line, 2, "--line")) if args.line is not None else None
    field = _field(args.field) if args.field is not None else None
    x_range = tuple(_numbers(args.x_range, 2, "--x-range"))
    return case4_sweep(list(eps_values), args.n, line, field, x_range)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filtration-sym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_case(p):
        p.add_argument("--case", required=True, choices=["g1", "g2", "g3"])
        p.add_argument("--n", type=float, default=None, help="exponent of the G3 family")
        return p

    p = with_case(sub.add_parser("verify-group", help="group law, inverse, exp map"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify_group)

    p = with_case(sub.add_parser("verify-action", help="gamma is an action"))
    p.add_argument("--field", default=None, help='expression in t, x, e.g. "t + x^2"')
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify_action)

    p = with_case(sub.add_parser("verify-generators", help="finite-difference generator recovery"))
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify_generators)

    p = with_case(sub.add_parser("invariance", help="residual before/after a group element"))
    p.add_argument("--k", required=True, help="exp | power | arctan-exp | generic:EXPR in p")
    p.add_argument("--solution", required=True, help="linear:a,b | sep-exp:a,c | sep-power:a,c")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--s0", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=20, help="points per axis")
    p.add_argument("--box", default=None, help="t0,t1,x0,x1 (default: inside both domains)")
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--stencil", action="store_true", help="ignore analytic partials")
    p.set_defaults(run=cmd_invariance)

    p = sub.add_parser("case4", help="X7 rotation sweep and fold detection")
    p.add_argument("--line", default=None, help="a,b for v = a x + b")
    p.add_argument("--field", default=None, help="expression in t, x")
    p.add_argument("--n", type=float, default=1.0)
    p.add_argument("--eps-min", type=float, default=0.0)
    p.add_argument("--eps-max", type=float, default=math.pi)
    p.add_argument("--eps-steps", type=int, default=33)
    p.add_argument("--include", default=None, help="extra comma-separated eps values")
    p.add_argument("--x-range", default="-2,2")
    p.add_argument("--csv", default=None, help="write the sweep table here instead of stdout")
    p.set_defaults(run=cmd_case4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, rows = args.run(args)
    except FiltrationSymError as exc:
        # suites record check failures themselves; anything raised is bad input
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if rows is not None:
        table = "\n".join(rows) + "\n"
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                fh.write(table)
        else:
            sys.stdout.write(table + "\n")
    sys.stdout.write(report.render())
    print(f"wall_time={report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
