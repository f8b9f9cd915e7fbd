"""Run configuration built from the command line"""
import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from beartype import beartype

from calculus.catalog import Kind
from cli.constants import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_PARALLELISM,
    DEFAULT_STEP_BUDGET,
    Command,
    OutputFormat,
)


@dataclass(frozen=True)
class RunConfig:
    """A config for one command run.

    Attributes:
        command: one of catalog, unify, overlaps, diagrams.
        transformations: transformation name patterns; empty selects all.
        no_rules: normal-order rule name patterns; empty selects all.
        max_depth: bound on the total length of a fork closure.
        step_budget: expanded search states allowed per forking problem.
        output_format: json is the machine contract, text is for reading.
        output: file receiving the rendered output, stdout when None.
        parallelism: worker processes for problem solving and closing.
        report_raw: also report counts before deduplication per problem.
        csv: file receiving the per-problem summary table.
        witness: attach the expanded instance to every final system.
        trace: attach the derivation trace to every final system.
        kind: catalog kind filter.
        result_dir: directory receiving config.json.
    """

    command: Command
    transformations: tuple[str, ...] = ()
    no_rules: tuple[str, ...] = ()
    max_depth: int = DEFAULT_MAX_DEPTH
    step_budget: int = DEFAULT_STEP_BUDGET
    output_format: OutputFormat = "json"
    output: str | None = None
    parallelism: int = DEFAULT_PARALLELISM
    report_raw: bool = False
    csv: str | None = None
    witness: bool = False
    trace: bool = False
    kind: Kind | None = None
    result_dir: str | None = None

    def patterns(self, kind: str) -> list[str] | None:
        found = self.transformations if kind == "transformation" else self.no_rules
        return list(found) or None


@beartype
def construct_run_config(args: argparse.Namespace) -> RunConfig:
    transformations = list(args.transformation or [])
    no_rules = list(args.no_rule or [])
    if args.command == "unify":
        transformations = [args.lhs_t]
        no_rules = [args.lhs_no]
    elif args.command == "diagrams" and args.target:
        transformations = [args.target]
    elif args.command == "catalog" and args.name:
        transformations = no_rules = [args.name]
    elif args.command == "catalog" and args.no_rule:
        transformations = transformations + no_rules
    return RunConfig(
        command=args.command,
        transformations=tuple(transformations),
        no_rules=tuple(no_rules),
        max_depth=args.max_depth,
        step_budget=args.step_budget,
        output_format=args.format,
        output=args.output,
        parallelism=args.parallelism,
        report_raw=args.report_raw,
        csv=args.csv,
        witness=args.witness,
        trace=args.trace,
        kind=getattr(args, "kind", None),
        result_dir=args.result_dir or None,
    )


@beartype
def dump_config(args: argparse.Namespace) -> Path | None:
    if not args.result_dir:
        return None
    Path(args.result_dir).mkdir(parents=True, exist_ok=True)
    config_file = Path(args.result_dir) / "config.json"
    with open(config_file, "w") as f:
        json.dump(vars(args), f, indent=4)
    return config_file
