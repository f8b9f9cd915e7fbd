"""Depth-first exploration of all rule choices"""
import dataclasses
import logging
import re
from dataclasses import dataclass

from beartype import beartype

from term_core import (
    Chain,
    CtxApp,
    CtxVar,
    IntVar,
    Term,
    Var,
    canonical,
    context_variables,
    int_variables,
    rename,
    subterms,
    to_text,
    variables,
)
from unifier.constraints import constraints_satisfiable
from unifier.dvc import dvc_report
from unifier.errors import CyclicSolutionError, StepBudgetExceeded
from unifier.problem import FinalSystem, Key, UnifProblem, UnifState, key_text
from unifier.rules import FAIL, expand
from unifier.solution import bv_classes, resolve

DEFAULT_STEP_BUDGET = 10**6

logger = logging.getLogger("logger")


@dataclass(frozen=True)
class SearchOutcome:
    """Attributes:
    finals: every final system reached, before deduplication.
    steps: number of expanded states.
    failures: number of branches that ended in Fail or an
        unsatisfiable Delta2.
    """

    finals: tuple[FinalSystem, ...]
    steps: int
    failures: int


def _int_sort_key(n: IntVar) -> tuple[int, str]:
    return (len(n.name), n.name)


def _kept(key: Key, initial_keys: set[Key]) -> bool:
    return key in initial_keys or key.is_chain


@beartype
def finalize(state: UnifState, problem: UnifProblem) -> FinalSystem | None:
    """Turn a state with empty P into a final system, or None if its
    integer constraints have no model or its solved part is cyclic"""
    try:
        resolved = resolve(state.solved)
    except CyclicSolutionError as e:
        logger.debug(f"[Cycle] {e.message}")
        return None
    initial_keys = problem.keys()
    s_other = tuple(
        sorted(
            ((k, t) for k, t in resolved.items() if _kept(k, initial_keys)),
            key=lambda entry: key_text(entry[0]),
        )
    )
    t1_vars = variables(problem.left_term)
    s_bv = bv_classes(state.s_bv, t1_vars)

    mentioned: set[CtxVar] = set()
    ints: set[IntVar] = set()
    for _, image in s_other:
        mentioned.update(context_variables(image))
        ints.update(int_variables(image))
    for eq in problem.equations:
        for side in (eq.left, eq.right):
            mentioned.update(context_variables(side))
            ints.update(int_variables(side))
    for x, rep in s_bv:
        ints.update(int_variables(x) | int_variables(rep))
    for c in state.delta2:
        ints.update((c.left, c.right))
    delta1 = frozenset(
        x
        for x in state.delta1
        if x not in resolved and (x in mentioned or x.is_chain)
    )
    model = constraints_satisfiable(state.delta2, frozenset(ints))
    if model is None:
        return None
    final = FinalSystem(
        s_bv=s_bv,
        s_other=s_other,
        delta1=delta1,
        delta2=state.delta2,
        dvc_ok=True,
        least_model=tuple(sorted(model.items(), key=lambda item: _int_sort_key(item[0]))),
        origin=problem.origin,
        variable_position=state.position == "variable",
        trace=state.trace,
    )
    report = dvc_report(final, problem.left_term)
    return dataclasses.replace(final, dvc_ok=not report.violated)


@beartype
def search(
    problem: UnifProblem,
    step_budget: int = DEFAULT_STEP_BUDGET,
    record_trace: bool = False,
) -> SearchOutcome:
    """Explore every don't-know alternative; alternatives of one step
    are visited in the order the rule produced them"""
    problem.validate()
    stack = [UnifState.initial(problem, tracing=record_trace)]
    finals: list[FinalSystem] = []
    steps = failures = 0
    while stack:
        state = stack.pop()
        if state.is_final:
            final = finalize(state, problem)
            if final is None:
                failures += 1
            else:
                finals.append(final)
            continue
        steps += 1
        if steps > step_budget:
            raise StepBudgetExceeded(
                f"Step budget of {step_budget} exhausted for {problem.origin}", steps
            )
        outcome = expand(state)
        if outcome is FAIL or not isinstance(outcome, list):
            failures += 1
            continue
        stack.extend(reversed(outcome))
    logger.debug(
        f"[Search] {problem.origin}: {len(finals)} finals, {steps} steps, {failures} failures"
    )
    return SearchOutcome(tuple(finals), steps, failures)


# deduplication

_FRESH_TERM = re.compile(r"^(?:u|e|E|X)\d+$")
_FRESH_INT = re.compile(r"^N(\d+)$")
_MASK = re.compile(r"\b(?:[ueEX]\d+|N(?:[3-9]|\d{2,}))\b")


def _is_fresh_int(n: IntVar) -> bool:
    found = _FRESH_INT.match(n.name)
    return found is not None and int(found.group(1)) >= 3


class _Renaming:
    """Canonical names for fresh variables in first-occurrence order"""

    def __init__(self) -> None:
        self.terms: dict[Var, Var] = {}
        self.contexts: dict[CtxVar, CtxVar] = {}
        self.ints: dict[IntVar, IntVar] = {}
        self._counts: dict[str, int] = {}

    def _next(self, family: str, start: int = 1) -> int:
        k = self._counts.get(family, start)
        self._counts[family] = k + 1
        return k

    def visit_int(self, n: object) -> None:
        if isinstance(n, IntVar) and _is_fresh_int(n) and n not in self.ints:
            self.ints[n] = IntVar(f"N{self._next('N', 3)}")

    def visit(self, t: Term) -> None:
        for s in subterms(t):
            match s:
                case Var():
                    self.visit_int(s.index)
                    if not s.is_chain and _FRESH_TERM.match(s.name) and s not in self.terms:
                        family = s.name[0]
                        self.terms[s] = Var(f"{family}{self._next(family)}", s.sort)
                case CtxApp(x, _):
                    self.visit_ctx(x)
                case Chain(start, end):
                    self.visit_int(start)
                    self.visit_int(end)

    def visit_ctx(self, x: CtxVar) -> None:
        self.visit_int(x.index)
        if not x.is_chain and _FRESH_TERM.match(x.name) and x not in self.contexts:
            self.contexts[x] = CtxVar(f"X{self._next('X')}", x.cls)

    def term(self, t: Term) -> str:
        return to_text(canonical(rename(t, self.terms, self.contexts, self.ints)))

    def key(self, k: Key) -> str:
        if isinstance(k, Var):
            return self.term(k)
        if k in self.contexts:
            return key_text(self.contexts[k])
        if isinstance(k.index, IntVar):
            return key_text(dataclasses.replace(k, index=self.ints.get(k.index, k.index)))
        return key_text(k)

    def int_name(self, n: IntVar) -> str:
        return self.ints.get(n, n).name


def canonical_key(final: FinalSystem) -> tuple[object, ...]:
    """Identity of a final system up to the names of fresh variables"""
    entries: list[tuple[str, Key, Term]] = [
        (_MASK.sub("?", f"{key_text(k)} = {to_text(t)}"), k, t) for k, t in final.s_other
    ]
    entries.sort(key=lambda entry: entry[0])
    renaming = _Renaming()
    for _, k, t in entries:
        if isinstance(k, Var):
            renaming.visit(k)
        else:
            renaming.visit_ctx(k)
        renaming.visit(t)
    pairs = sorted(
        [(_MASK.sub("?", f"{to_text(x)} = {to_text(y)}"), x, y) for x, y in final.s_bv],
        key=lambda entry: entry[0],
    )
    for _, x, y in pairs:
        renaming.visit(x)
        renaming.visit(y)
    for x in sorted(final.delta1, key=lambda x: _MASK.sub("?", key_text(x))):
        renaming.visit_ctx(x)
    for c in sorted(final.delta2, key=lambda c: _MASK.sub("?", str(c))):
        renaming.visit_int(c.left)
        renaming.visit_int(c.right)
    return (
        tuple(sorted(f"{renaming.key(k)} = {renaming.term(t)}" for k, t in final.s_other)),
        tuple(sorted(f"{renaming.term(x)} = {renaming.term(y)}" for x, y in final.s_bv)),
        tuple(sorted(renaming.key(x) for x in final.delta1)),
        tuple(
            sorted(
                f"{renaming.int_name(c.left)} {c.relation} {renaming.int_name(c.right)}"
                for c in final.delta2
            )
        ),
        final.variable_position,
    )


@beartype
def deduplicate(finals: tuple[FinalSystem, ...] | list[FinalSystem]) -> list[FinalSystem]:
    seen: set[tuple[object, ...]] = set()
    unique: list[FinalSystem] = []
    for final in finals:
        key = canonical_key(final)
        if key not in seen:
            seen.add(key)
            unique.append(final)
    return unique


@beartype
def solve(
    problem: UnifProblem,
    step_budget: int = DEFAULT_STEP_BUDGET,
    record_trace: bool = False,
) -> list[FinalSystem]:
    """All final systems of problem, deduplicated, in search order.

    Systems violating the distinct variable convention are kept and
    marked with dvc_ok = False.
    """
    outcome = search(problem, step_budget, record_trace)
    unique = deduplicate(outcome.finals)
    logger.debug(f"[Result] {problem.origin}: {len(outcome.finals)} raw, {len(unique)} unique")
    return unique
