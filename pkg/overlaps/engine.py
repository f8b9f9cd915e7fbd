"""The overlap engine: solve every forking problem and build the forks"""
import logging
import multiprocessing
from dataclasses import dataclass, field

from beartype import beartype
from tqdm import tqdm

from overlaps.forks import OverlapRecord, build_fork, classify
from overlaps.problems import initial_forking_problems, problem_for
from unifier import DEFAULT_STEP_BUDGET, FinalSystem, StepBudgetExceeded, search
from unifier.search import deduplicate

logger = logging.getLogger("logger")


@dataclass(frozen=True)
class PairResult:
    """Outcome of one forking problem.

    Attributes:
        transformation: name of the transformation.
        no_rule: name of the normal-order rule.
        raw: number of final systems before deduplication.
        finals: deduplicated final systems in search order.
        steps: expanded search states.
        error: diagnostic when the search was aborted.
        budget_exhausted: the step budget ran out.
    """

    transformation: str
    no_rule: str
    raw: int = 0
    finals: tuple[FinalSystem, ...] = ()
    steps: int = 0
    error: str | None = None
    budget_exhausted: bool = False

    @property
    def dvc_ok(self) -> tuple[FinalSystem, ...]:
        return tuple(f for f in self.finals if f.dvc_ok)


@dataclass
class OverlapRun:
    pairs: list[PairResult] = field(default_factory=list)
    records: list[OverlapRecord] = field(default_factory=list)

    @property
    def diagnostics(self) -> list[str]:
        return [
            f"{p.transformation} x {p.no_rule}: {p.error}" for p in self.pairs if p.error
        ]

    @property
    def budget_exhausted(self) -> bool:
        return any(p.budget_exhausted for p in self.pairs)

    def totals(self) -> dict[str, int]:
        return {
            "problems": len(self.pairs),
            "raw": sum(p.raw for p in self.pairs),
            "unique": sum(len(p.finals) for p in self.pairs),
            "dvc_ok": sum(len(p.dvc_ok) for p in self.pairs),
            "critical": sum(1 for r in self.records if r.classification == "critical"),
            "variable_position": sum(
                1 for r in self.records if r.classification == "variable-position"
            ),
        }


def solve_pair(task: tuple[str, str, int]) -> PairResult:
    """Worker entry point; module level so that pools can pickle it"""
    transformation, no_rule, step_budget = task
    problem = problem_for(transformation, no_rule)
    try:
        outcome = search(problem, step_budget)
    except StepBudgetExceeded as e:
        logger.warning(f"[Budget] {transformation} x {no_rule}: {e.message}")
        return PairResult(
            transformation, no_rule, steps=e.steps, error=e.message, budget_exhausted=True
        )
    except Exception as e:
        logger.error(f"[Unhandled Error] {repr(e)}")
        return PairResult(transformation, no_rule, error=repr(e))
    finals = tuple(deduplicate(outcome.finals))
    logger.debug(
        f"[Problem] {transformation} x {no_rule}: {len(outcome.finals)} raw, "
        f"{len(finals)} unique, {outcome.steps} steps"
    )
    return PairResult(transformation, no_rule, len(outcome.finals), finals, outcome.steps)


def _records(pair: PairResult) -> list[OverlapRecord]:
    records = []
    for final in pair.dvc_ok:
        records.append(OverlapRecord(final, build_fork(final), classify(final)))
    return records


@beartype
def run_overlaps(
    transformations: list[str] | None = None,
    no_rules: list[str] | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
    parallelism: int = 1,
    progress: bool = False,
) -> OverlapRun:
    """Solve the selected forking problems.

    Results come back in problem order whatever the parallelism, so the
    run is deterministic.
    """
    problems = initial_forking_problems(transformations, no_rules)
    tasks = []
    for problem in problems:
        assert problem.origin is not None
        tasks.append((problem.origin[0], problem.origin[1], step_budget))
    logger.info(f"[Overlaps] {len(tasks)} forking problems, parallelism {parallelism}")

    run = OverlapRun()
    if parallelism > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=parallelism) as pool:
            results = list(
                tqdm(pool.imap(solve_pair, tasks), total=len(tasks), disable=not progress)
            )
    else:
        results = [solve_pair(task) for task in tqdm(tasks, disable=not progress)]
    for pair in results:
        run.pairs.append(pair)
        run.records.extend(_records(pair))
    logger.info(f"[Result] {run.totals()}")
    return run


@beartype
def compute_overlaps(
    transformations: list[str] | None = None,
    no_rules: list[str] | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
    parallelism: int = 1,
) -> list[OverlapRecord]:
    return run_overlaps(transformations, no_rules, step_budget, parallelism).records
