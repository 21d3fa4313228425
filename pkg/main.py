# Copyright (c) 2025 ProxSTORM

"""
Entry point script for the ProxSTORM project.
"""

import argparse
import sys

from src.cli import cmd_run, cmd_sweep, cmd_verify
from src.utils.logger import setup_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Stochastic proximal trust-region experiments"
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument(
        "--log-dir",
        default="logs",
        help="Directory for log files (default: logs)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run one experiment per seed")
    sweep_parser = subparsers.add_parser("sweep", help="Measure T_eps over thresholds")
    for sub in (run_parser, sweep_parser):
        sub.add_argument("--config", required=True, help="Path to a YAML run config")
        sub.add_argument("--out", default=None, help="Override the output directory")
        sub.add_argument(
            "--seeds",
            type=int,
            default=None,
            help="Run seeds 0..N-1 instead of the configured list",
        )
    sweep_parser.add_argument(
        "--epsilons",
        type=float,
        nargs="+",
        default=None,
        help="Thresholds (default: the config's epsilons)",
    )

    verify_parser = subparsers.add_parser("verify", help="Run the property suites")
    verify_parser.add_argument(
        "--suite", default=None, help="Run only the named suite"
    )
    verify_parser.add_argument("--seed", type=int, default=0, help="Suite seed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_dir, "DEBUG" if args.debug else "INFO")

    if args.command == "run":
        return cmd_run(args.config, out_dir=args.out, n_seeds=args.seeds)
    if args.command == "sweep":
        return cmd_sweep(
            args.config, epsilons=args.epsilons, out_dir=args.out, n_seeds=args.seeds
        )
    return cmd_verify(suite=args.suite, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
