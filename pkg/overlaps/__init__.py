from .engine import OverlapRun, PairResult, compute_overlaps, run_overlaps, solve_pair
from .forks import Fork, ForkError, OverlapRecord, build_fork, classify
from .problems import (
    SURFACE,
    initial_forking_problems,
    initial_problem,
    problem_for,
    renamed_no_rule,
)
from .report import (
    OVERLAP_TARGET,
    RECONCILIATION_COLUMNS,
    SUMMARY_COLUMNS,
    pair_reconciliation_frame,
    reconciliation_frame,
    render_summary_text,
    summary_frame,
    totals_frame,
    witness,
    write_summary_csv,
)

__all__ = [
    "SURFACE",
    "initial_forking_problems",
    "initial_problem",
    "problem_for",
    "renamed_no_rule",
    "Fork",
    "ForkError",
    "OverlapRecord",
    "build_fork",
    "classify",
    "OverlapRun",
    "PairResult",
    "compute_overlaps",
    "run_overlaps",
    "solve_pair",
    "SUMMARY_COLUMNS",
    "OVERLAP_TARGET",
    "RECONCILIATION_COLUMNS",
    "reconciliation_frame",
    "pair_reconciliation_frame",
    "summary_frame",
    "totals_frame",
    "write_summary_csv",
    "witness",
    "render_summary_text",
]
