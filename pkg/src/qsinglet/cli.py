"""Command-line front end: ``qsinglet audit|table|sweep|solve-r|claims``.

Exit codes: 0 on success (whatever the verdicts), 2 for usage errors, 3 when
a computation raises.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .audit import CLAIMS, claim_ids, render, render_sweep, run_all, sweep
from .braiding import solve_r
from .errors import NoSolution, QSingletError
from .measurement import (
    BornRule,
    BraChoice,
    Convention,
    Ordering,
    all_conventions,
    dressed_joint,
    marginals,
    naive_joint,
    standard_conventions,
)
from .scalar import as_rational, rational_sqrt, to_float

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3


class UsageError(Exception):
    pass


def _add_convention_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--convention", action="append", default=[], metavar="KEY",
                   help="convention key such as 'r=paper,bob=r,bra=state,ord=ba,born=sandwich', "
                        "or 'standard' / 'all'; repeatable")
    p.add_argument("--r-source", choices=["paper", "solved"], default="paper")
    p.add_argument("--bob-rule", choices=["r", "r21", "rinv"], default="r")
    p.add_argument("--bra", choices=[b.value for b in BraChoice], default="state")
    p.add_argument("--ordering", choices=[o.value for o in Ordering], default="ba")
    p.add_argument("--born", choices=[b.value for b in BornRule], default="sandwich")


def _conventions(args) -> list[Convention]:
    if not args.convention:
        return [Convention(args.r_source, args.bob_rule, args.bra, args.ordering, args.born)]
    out = []
    for key in args.convention:
        if key == "standard":
            out += standard_conventions()
        elif key == "all":
            out += all_conventions()
        else:
            try:
                out.append(Convention.from_key(key))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    return out


def _rational(text: str):
    try:
        q = as_rational(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc
    if q <= 0:
        raise UsageError(f"q must be positive, got {text}")
    return q


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_audit(args) -> int:
    report = run_all(_conventions(args))
    data = render(report, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def _value(x, q):
    s0 = rational_sqrt(q)
    if s0 is not None:
        v = x.evaluate(s0, physical=True)
        return f"{v} ({float(v):.12f})"
    return f"{to_float(x, float(q)):.12f}"


def cmd_table(args) -> int:
    q = _rational(args.q)
    lines = [f"q = {q}" + ("" if rational_sqrt(q) is not None else "  (s = sqrt(q) irrational: float evaluation)"), ""]

    def block(title, jd):
        m = marginals(jd)
        lines.append(title)
        lines.append(f"  p(+,+) = {_value(jd[1, 1], q)}")
        lines.append(f"  p(+,-) = {_value(jd[1, -1], q)}")
        lines.append(f"  p(-,+) = {_value(jd[-1, 1], q)}")
        lines.append(f"  p(-,-) = {_value(jd[-1, -1], q)}")
        lines.append(f"  bias_A = {_value(m.bias, q)}")
        if jd.quasi_probability:
            lines.append("  (negative entries at sampled q: quasi-probabilities)")
        lines.append("")

    block("naive Jz x 1, 1 x Jz", naive_joint())
    for conv in _conventions(args):
        block(f"dressed [{conv.key}]", dressed_joint(conv=conv))
    _emit("\n".join(lines), None)
    return EXIT_OK


def cmd_sweep(args) -> int:
    q_min, q_max = _rational(args.q_min), _rational(args.q_max)
    if q_max < q_min:
        raise UsageError("--q-max must be at least --q-min")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    convs = _conventions(args)
    rows = sweep(q_min, q_max, args.steps, convs[0])
    _emit(render_sweep(rows, args.format), args.out)
    return EXIT_OK


def _parse_support(text: str):
    try:
        pos = [tuple(int(v) for v in item.split(",")) for item in text.split()]
    except ValueError:
        raise UsageError(f"bad support {text!r}; expected 'i,j i,j ...'") from None
    if any(len(p) != 2 for p in pos):
        raise UsageError(f"bad support {text!r}; expected 'i,j i,j ...'")
    if any(not 1 <= v <= 4 for p in pos for v in p):
        raise UsageError(f"support positions must lie between 1 and 4, got {text!r}")
    return pos


def cmd_solve_r(args) -> int:
    support = _parse_support(args.support) if args.support else None
    try:
        sol = solve_r(support)
    except NoSolution as exc:
        _emit(f"no solution: {exc}\n", None)
        return EXIT_OK
    lines = [f"support: {' '.join(f'{i},{j}' for i, j in sol.support)}", f"solution space dimension: {sol.dimension}"]
    for n, b in enumerate(sol.basis):
        lines.append(f"basis[{n}]:")
        lines += ["  " + "  ".join(x.to_q_string() for x in b.row(i)) for i in range(b.rows)]
    if sol.normalized is not None:
        lines.append("normalized (lower-right entry q):")
        lines += ["  " + "  ".join(x.to_q_string() for x in sol.normalized.row(i)) for i in range(4)]
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_claims(args) -> int:
    lines = []
    for cid in claim_ids():
        c = CLAIMS[cid]
        lines.append(f"{cid}\t{c.ref[0]}\t{c.statement}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsinglet", description="Exact audit of deformed-singlet statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="run every registered claim")
    _add_convention_flags(p)
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("table", help="joint tables and biases at one q")
    p.add_argument("--q", required=True, help="rational such as 3/2 or 1.5")
    _add_convention_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="statistics over a grid of q")
    p.add_argument("--q-min", required=True)
    p.add_argument("--q-max", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=["csv", "markdown", "json"], default="csv")
    p.add_argument("--out", metavar="PATH")
    _add_convention_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve-r", help="solve the intertwiner equations for R")
    p.add_argument("--support", help="1-based positions, e.g. '1,1 2,2 3,3 4,4 2,3'")
    p.set_defaults(func=cmd_solve_r)

    p = sub.add_parser("claims", help="claim registry")
    claims_sub = p.add_subparsers(dest="claims_command", required=True)
    pl = claims_sub.add_parser("list", help="list registered claims")
    pl.set_defaults(func=cmd_claims)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qsinglet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QSingletError as exc:
        print(f"qsinglet: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
