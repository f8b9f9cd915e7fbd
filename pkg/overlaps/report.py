"""Reconciliation tables and witnesses for overlap runs"""
import pandas as pd
from beartype import beartype

from calculus import print_expr
from overlaps.engine import OverlapRun
from overlaps.problems import problem_for
from term_core import instantiate
from unifier import FinalSystem, derive_solution

SUMMARY_COLUMNS = [
    "transformation",
    "no_rule",
    "raw",
    "unique",
    "dvc_ok",
    "critical",
    "variable_position",
    "steps",
    "status",
]

# reference overlap count for the full calculus, counting policy unknown
OVERLAP_TARGET = 1214

RECONCILIATION_COLUMNS = ["total", "obtained", "target", "deviation", "reason"]

_TOTAL_REASONS = {
    "raw": "every final system found, duplicates included",
    "unique": "raw less duplicates up to renaming of fresh variables",
    "dvc_ok": "unique less finals violating the distinct variable convention",
    "critical": "dvc_ok finals whose transformation redex is on the hole path",
    "variable_position": "dvc_ok finals whose transformation redex is inside a meta-variable",
}


@beartype
def summary_frame(run: OverlapRun) -> pd.DataFrame:
    """One row per forking problem, in problem order"""
    rows = []
    for pair in run.pairs:
        critical = sum(1 for f in pair.dvc_ok if not f.variable_position)
        rows.append(
            {
                "transformation": pair.transformation,
                "no_rule": pair.no_rule,
                "raw": pair.raw,
                "unique": len(pair.finals),
                "dvc_ok": len(pair.dvc_ok),
                "critical": critical,
                "variable_position": len(pair.dvc_ok) - critical,
                "steps": pair.steps,
                "status": "ok" if pair.error is None else "error",
            }
        )
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


@beartype
def totals_frame(run: OverlapRun) -> pd.DataFrame:
    """Counts per transformation"""
    df = summary_frame(run)
    numeric = ["raw", "unique", "dvc_ok", "critical", "variable_position"]
    return df.groupby("transformation", sort=False)[numeric].sum()


def _pair_reason(duplicates: int, violations: int, variable_position: int) -> str:
    parts = [
        f"{n} {what}"
        for n, what in (
            (duplicates, "duplicates"),
            (violations, "convention violations"),
            (variable_position, "at variable positions"),
        )
        if n
    ]
    return ", ".join(parts) if parts else "all raw finals are critical"


@beartype
def reconciliation_frame(run: OverlapRun, target: int = OVERLAP_TARGET) -> pd.DataFrame:
    """Every total against the target count, with what the total counts"""
    totals = run.totals()
    rows = [
        {
            "total": name,
            "obtained": totals[name],
            "target": target,
            "deviation": totals[name] - target,
            "reason": reason,
        }
        for name, reason in _TOTAL_REASONS.items()
    ]
    return pd.DataFrame(rows, columns=RECONCILIATION_COLUMNS)


@beartype
def pair_reconciliation_frame(run: OverlapRun) -> pd.DataFrame:
    """Per forking problem, where the raw finals go on the way to the
    critical count"""
    df = summary_frame(run)
    out = df[["transformation", "no_rule", "raw", "critical"]].copy()
    duplicates = df["raw"] - df["unique"]
    violations = df["unique"] - df["dvc_ok"]
    out["reason"] = [
        _pair_reason(int(d), int(v), int(p))
        for d, v, p in zip(duplicates, violations, df["variable_position"])
    ]
    errors = df["status"] == "error"
    out.loc[errors, "reason"] = "search aborted"
    return out


@beartype
def write_summary_csv(run: OverlapRun, path: str) -> None:
    summary_frame(run).to_csv(path, index=False)


@beartype
def witness(final: FinalSystem) -> str:
    """The overlap instance under the least integer model, chains expanded"""
    if final.origin is None:
        raise ValueError("Final system does not stem from a forking problem")
    problem = problem_for(*final.origin)
    sigma = derive_solution(final, final.model)
    return print_expr(instantiate(sigma, problem.left_term))


@beartype
def render_summary_text(run: OverlapRun) -> str:
    totals = run.totals()
    lines = [summary_frame(run).to_string(index=False), ""]
    lines.append(
        f"problems: {totals['problems']}  raw: {totals['raw']}  "
        f"unique: {totals['unique']}  dvc-filtered: {totals['dvc_ok']}  "
        f"critical: {totals['critical']}  variable-position: {totals['variable_position']}"
    )
    lines += ["", reconciliation_frame(run).to_string(index=False)]
    for diagnostic in run.diagnostics:
        lines.append(f"diagnostic: {diagnostic}")
    return "\n".join(lines)
