"""Command-line front end: named demos with table or JSON reports.

Exit code 0 means every executed check reached its expected verdict.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .demos import DEMO_NAMES, DemoOptions, run_demo
from .report import emit


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leftorder",
        description="Exact group-order and inconsistency-pattern demonstrations.",
    )
    sub = parser.add_subparsers(dest="demo", metavar="demo")
    descriptions = {
        "kb-axioms": "randomized group-axiom and oracle audit of the normal form",
        "kb-pattern": "build and verify the depth-2 interval/coset pattern",
        "kb-cover-fails": "witness that central cosets cannot cover [e, x]",
        "presburger-iso": "check the coordinate isomorphism onto the definable copy",
        "plaut-hull": "the convex-hull-of-a-cyclic-subgroup failure in PL maps of Q",
        "free-chain": "verify the depth-(n+1) pinned-product pattern in a free group",
        "index-pairs": "subgroup index pairs over intersections, with evidence",
    }
    for name in DEMO_NAMES:
        p = sub.add_parser(name, help=descriptions[name])
        p.add_argument("--depth", type=int, default=None, help="depth parameter (scenario specific)")
        p.add_argument("--cols", type=int, default=None, help="columns per pattern row")
        p.add_argument("--bound", type=int, default=None, help="magnitude / budget / radius")
        p.add_argument("--cap", type=int, default=None, help="sample count or search cap")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument(
            "--format", choices=("table", "json"), default="table", help="output format"
        )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.demo is None:
        parser.print_help()
        return 2
    options = DemoOptions(
        depth=args.depth, cols=args.cols, bound=args.bound, cap=args.cap, seed=args.seed
    )
    try:
        report = run_demo(args.demo, options)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(emit(report, args.format))
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
