"""Command-line harness.

    locmult run --suite riesz --seed 1 --count 100
    locmult run --suite all --json report.json --quiet
    locmult localize --base "pwl[(0,0);(1,1)]" --sup "pwl[(0,1);(1,1)]"
    locmult monster build --rho 1/2 --mu 1/4 --depth 3 --out stage.json
    locmult fn "pwl[(0,0);(1/2,1/2);(1,0)]" --at 1/2

Exit status: 0 when every check passed, 1 when a check failed, 2 on usage
errors (bad flags, count < 1, unreadable functions, unwritable output).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import OrderedDict
from typing import List, Optional

from .localization import make_class, minimal_ideal_dominates
from .monster import build_monster, monster_tower
from .pwl import F0, PwlFn, fmt, from_text, rat, to_text
from .suites import SUITES, Row, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_function(text: str) -> PwlFn:
    return from_text(text)


def print_function(f: PwlFn) -> str:
    return to_text(f)


def _rational(text: str):
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _function(text: str) -> PwlFn:
    try:
        return from_text(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("LOCMULT_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"LOCMULT_SEED must be an integer, got {env!r}")


def _write_json(path: str, data) -> None:
    text = json.dumps(data, indent=1, sort_keys=False) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}")


def report_json(rows: List[Row]) -> list:
    return [r.to_json() for r in rows]


def summarize(rows: List[Row]) -> "OrderedDict[str, List[int]]":
    table: "OrderedDict[str, List[int]]" = OrderedDict()
    for r in rows:
        key = f"{r.suite}.{r.check}"
        cell = table.setdefault(key, [0, 0])
        cell[0] += r.passed
        cell[1] += 1
    return table


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_run(args, out) -> int:
    try:
        cfg = SuiteConfig(seed=_resolve_seed(args.seed), count=args.count, depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = run_suite(args.suite, cfg)
    failures = [r for r in rows if not r.passed]
    if args.json:
        _write_json(args.json, report_json(rows))
    if not args.quiet:
        for key, (ok, total) in summarize(rows).items():
            print(f"{'PASS' if ok == total else 'FAIL'} {key}: {ok}/{total}", file=out)
        for r in failures[:50]:
            print(f"  failed {r.suite}.{r.check}[{r.instance_id}]: {r.witness}", file=out)
        print(f"{len(rows) - len(failures)}/{len(rows)} checks passed (seed {cfg.seed})", file=out)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_localize(args, out) -> int:
    c = make_class(args.base, args.sup)
    if c.is_zero:
        data = {"class": c.to_json(), "min_ideal_n": None}
        ok = True
    else:
        report = minimal_ideal_dominates(c)
        data = report.to_json(c)
        ok = report.ok
        if args.verbose:
            data["slope"] = fmt(report.slope)
            data["f_prime"] = to_text(report.f_prime.fn)
            data["checks"] = report.checks
    print(json.dumps(data), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_monster_build(args, out) -> int:
    build = build_monster(F0, F0, args.rho, args.mu)
    stages = monster_tower(args.depth, mu=args.mu)
    data = {"monster": build.to_json(), "tower": [s.to_json() for s in stages]}
    if args.out:
        _write_json(args.out, data)
    ok = build.ok and all(s.ok for s in stages)
    if not args.quiet:
        lo, hi = build.g.oscillation()
        print(f"monster rho={fmt(build.rho)} mu={fmt(build.mu)}: oscillation ({fmt(lo)}, {fmt(hi)}), "
              f"certificates {'ok' if build.ok else 'FAILED'}", file=out)
        for s in stages:
            print(f"  stage {s.n}: rho={fmt(s.rho)} gap={fmt(s.gap)} {'ok' if s.ok else 'FAILED'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fn(args, out) -> int:
    f = args.function
    print(print_function(f), file=out)
    for t in args.at or ():
        print(f"f({fmt(t)}) = {fmt(f(t))}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locmult", description="Exact checks for the monoid and interval machinery.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run verification suites")
    run.add_argument("--suite", default="all", choices=SUITES + ("all",))
    run.add_argument("--seed", type=int, default=None, help="seed (fallback: LOCMULT_SEED, then 0)")
    run.add_argument("--count", type=int, default=None, help="instances per suite (default: acceptance scale)")
    run.add_argument("--depth", type=int, default=3)
    run.add_argument("--json", metavar="PATH", default=None, help="write the flat JSON report here")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(handler=cmd_run)

    loc = sub.add_parser("localize", help="report the minimal-ideal certificate of a class")
    loc.add_argument("--base", type=_function, default=F0)
    loc.add_argument("--sup", type=_function, default=PwlFn.const(1))
    loc.add_argument("--verbose", action="store_true")
    loc.set_defaults(handler=cmd_localize)

    mon = sub.add_parser("monster", help="build the oscillating function and its tower")
    msub = mon.add_subparsers(dest="action", required=True)
    mb = msub.add_parser("build")
    mb.add_argument("--rho", type=_rational, default=rat(1, 2))
    mb.add_argument("--mu", type=_rational, default=rat(1, 4))
    mb.add_argument("--depth", type=int, default=3)
    mb.add_argument("--out", default=None)
    mb.add_argument("--quiet", action="store_true")
    mb.set_defaults(handler=cmd_monster_build)

    fn = sub.add_parser("fn", help="parse, print and evaluate a function literal")
    fn.add_argument("function", type=_function)
    fn.add_argument("--at", type=_rational, action="append")
    fn.set_defaults(handler=cmd_fn)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "depth", 1) < 1:
            raise UsageError("depth must be at least 1")
        return args.handler(args, out)
    except UsageError as exc:
        print(f"locmult: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # precondition failures on user-supplied data
        print(f"locmult: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
