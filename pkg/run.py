"""Script to compute overlaps and forking diagrams of the L_need calculus"""
from __future__ import annotations

import argparse
import logging
import random
import sys
import time
import traceback
from pathlib import Path
from typing import NoReturn

from calculus import CatalogError
from cli import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_STEP_BUDGET,
    EXIT_USAGE,
    construct_run_config,
    dump_config,
    run_command,
)
from cli.constants import COMMANDS, OUTPUT_FORMATS, RULE_KINDS

LOG_FOLDER = "log_files"

logger = logging.getLogger("logger")


def setup_logging(verbose: bool = False) -> None:
    if logger.handlers:
        return
    Path(LOG_FOLDER).mkdir(parents=True, exist_ok=True)
    log_file_name = f"{LOG_FOLDER}/log_{time.strftime('%Y%m%d%H%M%S', time.localtime())}_{random.randint(0, 10000)}.log"
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.DEBUG)
    logger.addHandler(console_handler)

    file_handler = logging.FileHandler(log_file_name)
    file_handler.setLevel(logging.DEBUG)
    logger.addHandler(file_handler)

    # Set the log format
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    console_handler.setFormatter(formatter)
    file_handler.setFormatter(formatter)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors surface as ValueError instead of exiting with status 2,
    which is reserved for budget exhaustion"""

    def error(self, message: str) -> NoReturn:
        raise ValueError(message)


def _common_arguments() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    # rule selection
    parser.add_argument(
        "--transformation",
        action="append",
        help="Transformation name, prefix or glob; repeatable",
    )
    parser.add_argument(
        "--no-rule",
        action="append",
        help="Normal-order rule name, prefix or glob; repeatable",
    )

    # search config
    parser.add_argument(
        "--max-depth",
        type=int,
        default=DEFAULT_MAX_DEPTH,
        help="Bound on the total number of steps closing a fork",
    )
    parser.add_argument(
        "--step-budget",
        type=int,
        default=DEFAULT_STEP_BUDGET,
        help="Search states expanded per forking problem before giving up",
    )
    parser.add_argument("--parallelism", type=int, default=1)

    # output config
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--output", help="Write the result here instead of stdout")
    parser.add_argument(
        "--report-raw",
        action="store_true",
        help="Report counts before deduplication",
    )
    parser.add_argument("--csv", help="Write the per-problem summary table here")
    parser.add_argument(
        "--witness",
        action="store_true",
        help="Print the expanded instance of every final system",
    )
    parser.add_argument("--trace", action="store_true", help="Dump derivation traces")

    # logging related
    parser.add_argument("--result-dir", type=str, default="")
    parser.add_argument("--verbose", action="store_true")
    return parser


def config(argv: list[str] | None = None) -> argparse.Namespace:
    parser = ArgumentParser(
        description="Compute overlaps and forking diagrams of the L_need calculus"
    )
    common = _common_arguments()
    commands = parser.add_subparsers(dest="command", required=True)

    catalog = commands.add_parser("catalog", parents=[common], help="Print the rule catalogs")
    catalog.add_argument("--kind", choices=RULE_KINDS)
    catalog.add_argument("--name", help="Print only the rules selected by this name")

    unify = commands.add_parser("unify", parents=[common], help="Solve one forking problem")
    unify.add_argument("lhs_t", help="Transformation name")
    unify.add_argument("lhs_no", help="Normal-order rule name")

    commands.add_parser("overlaps", parents=[common], help="Compute all overlaps")

    diagrams = commands.add_parser(
        "diagrams", parents=[common], help="Compute complete sets of forking diagrams"
    )
    diagrams.add_argument("target", nargs="?", help="Transformation name, prefix or glob")

    args = parser.parse_args(argv)
    assert args.command in COMMANDS

    # check the compatibility of the arguments
    if args.parallelism < 1:
        raise ValueError(f"--parallelism must be positive, got {args.parallelism}")
    if args.max_depth < 0:
        raise ValueError(f"--max-depth must not be negative, got {args.max_depth}")
    if args.step_budget < 1:
        raise ValueError(f"--step-budget must be positive, got {args.step_budget}")
    if args.command == "unify" and (args.transformation or args.no_rule):
        raise ValueError("unify takes the two rule names as arguments, not as filters")
    if args.command == "diagrams" and args.target and args.transformation:
        raise ValueError("Give the diagram target either as argument or as --transformation")
    if args.csv and args.command != "overlaps":
        raise ValueError(f"--csv is not supported by {args.command}")
    return args


def main(argv: list[str] | None = None) -> int:
    try:
        args = config(argv)
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(args.verbose)
    dump_config(args)
    cfg = construct_run_config(args)

    try:
        output, code = run_command(cfg)
    except CatalogError as e:
        logger.error(f"[Usage Error] {e.message}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"[Unhandled Error] {repr(e)}")
        if args.result_dir:
            # write to error file
            with open(Path(args.result_dir) / "error.txt", "a") as f:
                f.write(f"[Command]: {args.command}\n")
                f.write(f"[Unhandled Error] {repr(e)}\n")
                f.write(traceback.format_exc())
        raise

    if cfg.output:
        Path(cfg.output).write_text(output + "\n")
    else:
        sys.stdout.write(output + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
