"""``liejet check <suite|all> [options]``.

Exit codes: 0 all properties pass (skips allowed), 1 a property failed,
2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys

from ..expr import ExpressionError
from .config import SUITES, ConfigError, SuiteConfig, config_from_dict, load_config
from .report import emit_report
from .suite import run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liejet", description="Seeded property checks for the liejet library.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", help="run a property suite")
    c.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    c.add_argument("--seed", type=int)
    c.add_argument("--dim", type=int)
    c.add_argument("--order", type=int, help="jet length m")
    c.add_argument("--matrix-size", type=int)
    c.add_argument("--samples", type=int)
    c.add_argument("--tol-scale", type=float)
    c.add_argument("--config", help="JSON config file; flags override its fields")
    c.add_argument("--report", help="write the JSON report here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = dict(suite=args.suite, seed=args.seed, dim=args.dim, order=args.order,
                     matrix_size=args.matrix_size, samples=args.samples,
                     tol_scale=args.tol_scale)
    try:
        if args.config:
            cfg = load_config(args.config, **overrides)
        else:
            cfg = config_from_dict({}, **overrides)
    except (ConfigError, ExpressionError, TypeError) as exc:
        print(f"liejet: config error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(cfg)
    try:
        emit_report(report, args.report)
    except OSError as exc:
        print(f"liejet: cannot write report: {exc}", file=sys.stderr)
        return 2
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
