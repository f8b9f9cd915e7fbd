from .alpha import alpha_equivalent
from .constraints import constraints_satisfiable, holds
from .dvc import DvcReport, check_dvc, dvc_report
from .errors import (
    CyclicSolutionError,
    InapplicableRuleError,
    StepBudgetExceeded,
    UnifierError,
)
from .measure import Measure, term_measure
from .problem import (
    Equation,
    FinalSystem,
    TraceStep,
    UnifProblem,
    UnifState,
    measure,
)
from .rules import FAIL, RuleChoice, applicable_rules, apply_rule, expand, select_equation
from .search import (
    DEFAULT_STEP_BUDGET,
    SearchOutcome,
    canonical_key,
    deduplicate,
    finalize,
    search,
    solve,
)
from .solution import derive_solution, is_sound, resolve, symbolic_substitution

__all__ = [
    "Equation",
    "UnifProblem",
    "UnifState",
    "FinalSystem",
    "TraceStep",
    "Measure",
    "measure",
    "term_measure",
    "FAIL",
    "RuleChoice",
    "apply_rule",
    "applicable_rules",
    "select_equation",
    "expand",
    "search",
    "solve",
    "finalize",
    "deduplicate",
    "canonical_key",
    "SearchOutcome",
    "DEFAULT_STEP_BUDGET",
    "constraints_satisfiable",
    "holds",
    "DvcReport",
    "check_dvc",
    "dvc_report",
    "derive_solution",
    "is_sound",
    "resolve",
    "symbolic_substitution",
    "alpha_equivalent",
    "UnifierError",
    "InapplicableRuleError",
    "StepBudgetExceeded",
    "CyclicSolutionError",
]
