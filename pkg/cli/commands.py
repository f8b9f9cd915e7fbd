"""Command implementations.

Every command returns the rendered output together with its exit code;
the entry script is the single writer of that output.
"""
import json
import logging
from collections.abc import Callable
from typing import Any

from beartype import beartype

from calculus import catalog_json, find_rule, render_catalog_text
from cli.constants import EXIT_BUDGET, EXIT_OK, SCHEMA_VERSION
from cli.run_config import RunConfig
from diagrams import complete_set, render_set
from overlaps import (
    pair_reconciliation_frame,
    problem_for,
    reconciliation_frame,
    render_summary_text,
    run_overlaps,
    summary_frame,
    witness,
    write_summary_csv,
)
from term_core import to_text
from unifier import FinalSystem, StepBudgetExceeded, check_dvc, deduplicate, search

logger = logging.getLogger("logger")

CommandResult = tuple[str, int]


def _dump(payload: dict[str, Any]) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2)


@beartype
def cmd_catalog(cfg: RunConfig) -> CommandResult:
    patterns = list(cfg.transformations) or None
    if cfg.output_format == "text":
        return render_catalog_text(cfg.kind, patterns), EXIT_OK
    return catalog_json(cfg.kind, patterns), EXIT_OK


def _final_json(final: FinalSystem, cfg: RunConfig, dvc: dict[str, Any]) -> dict[str, Any]:
    found = final.to_json()
    found["dvc"] = dvc
    if cfg.witness:
        found["witness"] = witness(final)
    if cfg.trace:
        found["trace"] = [step.to_json() for step in final.trace]
    return found


def _final_text(i: int, final: FinalSystem, cfg: RunConfig) -> str:
    verdict = "dvc ok" if final.dvc_ok else "dvc violated"
    position = "variable-position" if final.variable_position else "critical"
    lines = [f"# final {i} ({verdict}, {position})"]
    lines += [f"  {to_text(x)} =. {to_text(y)}" for x, y in final.s_bv]
    lines += [f"  {k} =. {to_text(t)}" for k, t in final.s_other]
    if final.delta1:
        lines.append(f"  non-empty: {', '.join(sorted(str(x) for x in final.delta1))}")
    if final.delta2:
        lines.append(f"  indices: {', '.join(sorted(str(c) for c in final.delta2))}")
    if final.least_model:
        model = ", ".join(f"{n.name}={v}" for n, v in final.least_model)
        lines.append(f"  least model: {model}")
    if cfg.witness:
        lines.append(f"  witness: {witness(final)}")
    if cfg.trace:
        for step in final.trace:
            lines.append(f"  step {step.rule}: {step.before} -> {step.after}")
    return "\n".join(lines)


@beartype
def cmd_unify(cfg: RunConfig) -> CommandResult:
    transformation = find_rule(cfg.transformations[0], "transformation").name
    no_rule = find_rule(cfg.no_rules[0], "no").name
    problem = problem_for(transformation, no_rule)
    logger.info(f"[Problem] {transformation} x {no_rule}")
    try:
        outcome = search(problem, cfg.step_budget, cfg.trace)
    except StepBudgetExceeded as e:
        logger.warning(f"[Budget] {transformation} x {no_rule}: {e.message}")
        if cfg.output_format == "text":
            return f"budget exhausted: {e.message}", EXIT_BUDGET
        payload = {
            "origin": [transformation, no_rule],
            "raw": None,
            "finals": [],
            "diagnostics": [e.message],
        }
        return _dump(payload), EXIT_BUDGET
    finals = deduplicate(outcome.finals)
    logger.info(f"[Result] {len(outcome.finals)} raw, {len(finals)} finals")

    if cfg.output_format == "text":
        blocks = [f"{transformation} x {no_rule}: {len(finals)} final systems"]
        if cfg.report_raw:
            blocks[0] += f" ({len(outcome.finals)} before deduplication)"
        blocks += [_final_text(i, f, cfg) for i, f in enumerate(finals)]
        return "\n\n".join(blocks), EXIT_OK
    payload = {
        "origin": [transformation, no_rule],
        "raw": len(outcome.finals) if cfg.report_raw else None,
        "finals": [_final_json(f, cfg, check_dvc(f, problem).to_json()) for f in finals],
        "diagnostics": [],
    }
    return _dump(payload), EXIT_OK


@beartype
def cmd_overlaps(cfg: RunConfig) -> CommandResult:
    run = run_overlaps(
        cfg.patterns("transformation"),
        cfg.patterns("no"),
        cfg.step_budget,
        cfg.parallelism,
        progress=True,
    )
    if cfg.csv:
        write_summary_csv(run, cfg.csv)
    code = EXIT_BUDGET if run.budget_exhausted else EXIT_OK

    if cfg.output_format == "text":
        text = render_summary_text(run)
        if cfg.report_raw:
            text += "\n\n" + pair_reconciliation_frame(run).to_string(index=False)
        if cfg.witness:
            text += "\n\n" + "\n".join(
                f"{r.fork.transformation} x {r.fork.no_rule}: {witness(r.final)}"
                for r in run.records
            )
        return text, code

    records = []
    for r in run.records:
        record = r.to_json()
        if cfg.witness:
            record["witness"] = witness(r.final)
        records.append(record)
    payload: dict[str, Any] = {"totals": run.totals(), "records": records}
    payload["reconciliation"] = json.loads(reconciliation_frame(run).to_json(orient="records"))
    if cfg.report_raw:
        pairs = summary_frame(run).assign(reason=pair_reconciliation_frame(run)["reason"])
        payload["pairs"] = json.loads(pairs.to_json(orient="records"))
    payload["diagnostics"] = run.diagnostics
    return _dump(payload), code


@beartype
def cmd_diagrams(cfg: RunConfig) -> CommandResult:
    result = complete_set(
        cfg.patterns("transformation"),
        cfg.max_depth,
        cfg.patterns("no"),
        cfg.step_budget,
        cfg.parallelism,
        progress=True,
    )
    code = EXIT_BUDGET if result.budget_exhausted else EXIT_OK
    if cfg.output_format == "text":
        return render_set(result), code
    return _dump({"max_depth": cfg.max_depth, **result.to_json()}), code


COMMANDS: dict[str, Callable[[RunConfig], CommandResult]] = {
    "catalog": cmd_catalog,
    "unify": cmd_unify,
    "overlaps": cmd_overlaps,
    "diagrams": cmd_diagrams,
}


@beartype
def run_command(cfg: RunConfig) -> CommandResult:
    return COMMANDS[cfg.command](cfg)
