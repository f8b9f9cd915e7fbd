"""Complete sets of forking diagrams.

Closed forks are abstracted into schemas. A closure that commutes, one
step of the fork's own transformation below and one normal-order step
of the fork's own kind on the right, is the generic square: the
normal-order rule becomes the label variable a and the bottom step
keeps the transformation's compact name. Every other closure keeps the
family of each rule. Bottom steps are surface steps, S, whether or not
they are normal-order steps as well; a triangle whose left completion
reads like the bottom of a square of the same fork kind is counted
with that square.
"""
import logging
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from beartype import beartype
from tqdm import tqdm

from calculus import find_rule
from diagrams.closing import (
    DEFAULT_MAX_DEPTH,
    Diagram,
    Shape,
    Unclosed,
    close_fork,
    diagnose,
)
from diagrams.rewriting import MetaStep
from overlaps import Fork, run_overlaps
from unifier import DEFAULT_STEP_BUDGET

logger = logging.getLogger("logger")

Label = tuple[str, str]

GENERIC = ("no", "a")


def family(rule: str) -> str:
    return find_rule(rule).family


def compact_name(rule: str) -> str:
    """Rule base without dashes, e.g. cpe for cp-e/abs"""
    return find_rule(rule).base.replace("-", "")


def step_label(step: MetaStep) -> Label:
    return (step.mode, family(step.rule))


def is_generic(diagram: Diagram) -> bool:
    fork = diagram.fork
    match diagram.left_completion, diagram.right_completion:
        case (below,), (right,):
            return (
                right.mode == "no"
                and family(right.rule) == family(fork.no_rule)
                and family(below.rule) == family(fork.transformation)
            )
    return False


@dataclass(frozen=True, order=True)
class DiagramSchema:
    """A diagram with rule names abstracted.

    Attributes:
        transformation: compact name of the fork's transformation.
        fork: label of the fork's normal-order step.
        shape: shape of the closure.
        left: labels of the completion below the normal-order successor.
        right: labels of the completion below the transformation successor.
    """

    transformation: str
    fork: Label
    shape: Shape
    left: tuple[Label, ...]
    right: tuple[Label, ...]

    @property
    def is_triangle(self) -> bool:
        return self.shape == "triangle"

    def as_square(self) -> "DiagramSchema":
        """The square whose bottom edge covers the left completion of this
        triangle"""
        return DiagramSchema(
            self.transformation,
            self.fork,
            "square" if len(self.right) == 1 else "generalized",
            tuple(("S", name) for _, name in self.left),
            self.right,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "transformation": self.transformation,
            "fork": ",".join(self.fork),
            "shape": self.shape,
            "left": [",".join(label) for label in self.left],
            "right": [",".join(label) for label in self.right],
        }


@beartype
def schema_of(diagram: Diagram) -> DiagramSchema:
    fork = diagram.fork
    own = compact_name(fork.transformation)
    if is_generic(diagram):
        return DiagramSchema(own, GENERIC, "square", (("S", own),), (GENERIC,))
    shape = diagram.shape
    left = tuple(step_label(s) for s in diagram.left_completion)
    if shape not in ("triangle", "degenerate"):
        left = tuple(("S", name) for _, name in left)
    return DiagramSchema(
        transformation=own,
        fork=("no", family(fork.no_rule)),
        shape=shape,
        left=left,
        right=tuple(step_label(s) for s in diagram.right_completion),
    )


def fold_triangles(counts: Counter[DiagramSchema]) -> Counter[DiagramSchema]:
    """Count every triangle whose square is present with that square"""
    folded: Counter[DiagramSchema] = Counter()
    for schema, n in counts.items():
        square = schema.as_square() if schema.is_triangle and schema.left else None
        folded[square if square in counts else schema] += n
    return folded


@dataclass
class DiagramSet:
    """Attributes:
    diagrams: the closed forks, in overlap order.
    unclosed: forks without a closure within the bound.
    variable_position: number of forks from variable-position overlaps.
    diagnostics: forking problems whose search was aborted.
    budget_exhausted: some search ran out of its step budget.
    """

    diagrams: list[Diagram] = field(default_factory=list)
    unclosed: list[Unclosed] = field(default_factory=list)
    variable_position: int = 0
    diagnostics: list[str] = field(default_factory=list)
    budget_exhausted: bool = False

    def schemas(self) -> list[tuple[DiagramSchema, int]]:
        """Distinct schemas with the number of diagrams they cover"""
        counts = Counter(schema_of(d) for d in self.diagrams if d.shape != "degenerate")
        return sorted(fold_triangles(counts).items())

    def to_json(self) -> dict[str, Any]:
        return {
            "schemas": [{**s.to_json(), "count": n} for s, n in self.schemas()],
            "diagrams": [d.to_json(f"fork-{i}") for i, d in enumerate(self.diagrams)],
            "unclosed": [u.to_json() for u in self.unclosed],
            "variable_position": self.variable_position,
            "diagnostics": self.diagnostics,
        }


def _close(task: tuple[Fork, int]) -> Diagram | Unclosed:
    fork, max_depth = task
    diagram = close_fork(fork, max_depth)
    return diagram if diagram is not None else diagnose(fork, max_depth)


@beartype
def complete_set(
    transformations: list[str] | None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    no_rules: list[str] | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
    parallelism: int = 1,
    progress: bool = False,
) -> DiagramSet:
    """Close every fork of the selected transformations, critical and
    variable-position alike"""
    run = run_overlaps(transformations, no_rules, step_budget, parallelism, progress)
    result = DiagramSet(
        variable_position=sum(1 for r in run.records if r.classification != "critical"),
        diagnostics=run.diagnostics,
        budget_exhausted=run.budget_exhausted,
    )
    tasks = [(r.fork, max_depth) for r in run.records]
    if parallelism > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=parallelism) as pool:
            closed = list(tqdm(pool.imap(_close, tasks), total=len(tasks), disable=not progress))
    else:
        closed = [_close(task) for task in tqdm(tasks, disable=not progress)]
    for outcome in closed:
        if isinstance(outcome, Unclosed):
            logger.warning(
                f"[Unclosed] {outcome.fork.transformation} x {outcome.fork.no_rule}: "
                f"{outcome.reason}"
            )
            result.unclosed.append(outcome)
        else:
            result.diagrams.append(outcome)
    logger.info(
        f"[Diagrams] {len(result.diagrams)} closed, {len(result.unclosed)} unclosed, "
        f"{len(result.schemas())} schemas"
    )
    return result
