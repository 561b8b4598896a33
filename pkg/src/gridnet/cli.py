"""``gridnet`` command line."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import report
from .errors import ConvergenceError, GridError

log = logging.getLogger("gridnet")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _build_parser():
    p = argparse.ArgumentParser(prog="gridnet", description="Complex-network analysis of power-grid graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full analysis pipeline on a grid")
    a.add_argument("input", help="grid directory (nodes.csv + edges.csv) or grid.json")
    a.add_argument("--out", required=True, help="output directory")
    a.add_argument("--seed", type=int, default=0, help="seed for every randomised analysis")
    a.add_argument("--cost", action="store_true", help="compute alpha/beta cost parameters")
    a.add_argument("--baseline-trials", type=int, default=10, metavar="N")
    a.add_argument("--removal-step", type=float, default=0.05, metavar="F")
    a.add_argument("--random-trials", type=int, default=10, metavar="N",
                   help="trials averaged for the random removal policy")
    a.add_argument("--no-resilience", action="store_true")
    a.add_argument("--table", choices=report.TABLES, help="print a table after the analysis")
    a.add_argument("-v", "--verbose", action="store_true")

    t = sub.add_parser("table", help="render a table from an existing bundle.json")
    t.add_argument("bundle")
    t.add_argument("--table", required=True, choices=report.TABLES)
    return p


def cmd_analyze(args) -> int:
    try:
        bundle, artifacts = report.build_bundle(
            args.input, seed=args.seed, baseline_trials=args.baseline_trials,
            removal_step=args.removal_step, random_trials=args.random_trials,
            with_resilience=not args.no_resilience, with_cost=args.cost,
        )
    except (GridError, OSError) as exc:
        if isinstance(exc, ConvergenceError):
            print(f"gridnet: numeric failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"gridnet: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"gridnet: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out = report.write_outputs(bundle, artifacts, args.out)
    log.info("wrote %d files to %s", len(artifacts) + 1, out)
    if args.table:
        sys.stdout.write(report.render_table(bundle, args.table))
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        bundle = report.load_bundle(args.bundle)
    except (OSError, ValueError) as exc:
        print(f"gridnet: cannot read bundle: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.render_table(bundle, args.table))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_table(args)


if __name__ == "__main__":
    sys.exit(main())
