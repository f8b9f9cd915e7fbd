"""Unification problems, search states and final systems"""
from collections import Counter
from dataclasses import dataclass
from typing import Any, Literal

from beartype import beartype

from term_core import (
    Chain,
    CtxVar,
    FreshNames,
    IntConstraint,
    IntVar,
    Term,
    Var,
    context_variables,
    int_variables,
    sort_of,
    subterms,
    to_text,
    variables,
)
from unifier.errors import InapplicableRuleError
from unifier.measure import Measure, sides_measure

Position = Literal["pending", "critical", "variable"]
Key = Var | CtxVar


@dataclass(frozen=True)
class Equation:
    """s =. t; carrier marks the equation whose left side holds the
    transformation redex while its position is still undecided"""

    left: Term
    right: Term
    carrier: bool = False

    def __str__(self) -> str:
        return f"{to_text(self.left)} =. {to_text(self.right)}"


@dataclass(frozen=True)
class UnifProblem:
    """A unification problem (Gamma, Delta).

    Attributes:
        equations: the equations of Gamma.
        delta1: context variables required to be non-empty.
        delta2: integer relations N+1 = M and N < M.
        origin: (transformation name, normal-order rule name) for
            forking problems.
        carrier_ctx: the context variable wrapping the transformation
            redex in the first equation, if any.
    """

    equations: tuple[Equation, ...]
    delta1: frozenset[CtxVar] = frozenset()
    delta2: frozenset[IntConstraint] = frozenset()
    origin: tuple[str, str] | None = None
    carrier_ctx: CtxVar | None = None

    def validate(self) -> None:
        for eq in self.equations:
            if sort_of(eq.left) != sort_of(eq.right):
                raise InapplicableRuleError(f"Equation {eq} mixes sorts")
        in_chains: Counter[IntVar] = Counter()
        for eq in self.equations:
            for side in (eq.left, eq.right):
                for s in subterms(side):
                    if isinstance(s, Chain):
                        in_chains.update((s.start, s.end))
        for n, count in in_chains.items():
            if count > 1:
                raise InapplicableRuleError(f"{n} occurs in more than one chain")

    @property
    def left_term(self) -> Term:
        """Left side of the first equation, the term checked for the DVC"""
        return self.equations[0].left

    def names(self) -> set[str]:
        """Labels of every variable, context variable and integer variable"""
        found: set[str] = set()
        for eq in self.equations:
            for side in (eq.left, eq.right):
                found.update(x.label for x in variables(side))
                found.update(x.label for x in context_variables(side))
                found.update(n.name for n in int_variables(side))
        return found

    def keys(self) -> set[Key]:
        found: set[Key] = set()
        for eq in self.equations:
            for side in (eq.left, eq.right):
                found.update(variables(side))
                found.update(context_variables(side))
        return found


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: Measure
    after: Measure

    def to_json(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "before": [self.before.mu1, self.before.mu2],
            "after": [self.after.mu1, self.after.mu2],
        }


@dataclass(frozen=True)
class UnifState:
    """One node of the search tree.

    Attributes:
        pending: the unsolved part P, processed front to back.
        solved: the solved part S as (variable, image) entries; context
            images contain the hole.
        s_bv: solved equations between BV variables. They are never
            substituted into P.
        delta1: context variables required to be non-empty.
        delta2: integer relations.
        fresh: name supply of this branch.
        carrier_ctx: the context variable whose argument is the
            transformation redex, or None once the redex is the left side
            of the carrier equation.
        position: whether the redex has been placed at a rule position
            (critical) or inside the instance of a meta-variable.
        tracing: whether trace is recorded.
        trace: rules applied so far, with measures.
    """

    pending: tuple[Equation, ...]
    solved: tuple[tuple[Key, Term], ...] = ()
    s_bv: tuple[tuple[Var, Var], ...] = ()
    delta1: frozenset[CtxVar] = frozenset()
    delta2: frozenset[IntConstraint] = frozenset()
    fresh: FreshNames = FreshNames()
    carrier_ctx: CtxVar | None = None
    position: Position = "pending"
    tracing: bool = False
    trace: tuple[TraceStep, ...] = ()

    @classmethod
    def initial(cls, problem: UnifProblem, tracing: bool = False) -> "UnifState":
        return cls(
            tracing=tracing,
            pending=problem.equations,
            delta1=problem.delta1,
            delta2=problem.delta2,
            carrier_ctx=problem.carrier_ctx,
        )

    @property
    def is_final(self) -> bool:
        return not self.pending


@beartype
def measure(state: UnifState) -> Measure:
    return sides_measure(side for eq in state.pending for side in (eq.left, eq.right))


def key_text(key: Key) -> str:
    return str(key)


@dataclass(frozen=True)
class FinalSystem:
    """A solved system: BV identifications plus a DAG-solved remainder.

    Attributes:
        s_bv: equations x =. y between BV variables, each oriented towards
            the representative of its class.
        s_other: variable -> image for every solved variable of the
            initial problem and every solved chain context, with images
            fully resolved against the rest of S.
        delta1: surviving non-emptiness constraints.
        delta2: integer relations.
        dvc_ok: whether the represented instances satisfy the distinct
            variable convention.
        least_model: pointwise-least positive model of delta2.
        origin: (transformation name, normal-order rule name).
        variable_position: the transformation redex lies inside the
            instance of a meta-variable of the normal-order side.
        trace: the derivation that produced this system.
    """

    s_bv: tuple[tuple[Var, Var], ...]
    s_other: tuple[tuple[Key, Term], ...]
    delta1: frozenset[CtxVar]
    delta2: frozenset[IntConstraint]
    dvc_ok: bool
    least_model: tuple[tuple[IntVar, int], ...]
    origin: tuple[str, str] | None = None
    variable_position: bool = False
    trace: tuple[TraceStep, ...] = ()

    def image(self, key: Key) -> Term | None:
        for k, image in self.s_other:
            if k == key:
                return image
        return None

    def bv_pairs(self) -> set[frozenset[Var]]:
        return {frozenset(pair) for pair in self.s_bv}

    @property
    def model(self) -> dict[IntVar, int]:
        return dict(self.least_model)

    def to_json(self) -> dict[str, Any]:
        return {
            "origin": list(self.origin) if self.origin else None,
            "s_bv": [[to_text(x), to_text(y)] for x, y in self.s_bv],
            "s_other": [[key_text(k), to_text(t)] for k, t in self.s_other],
            "delta1": sorted(str(x) for x in self.delta1),
            "delta2": sorted(str(c) for c in self.delta2),
            "dvc_ok": self.dvc_ok,
            "least_model": {n.name: v for n, v in self.least_model},
            "variable_position": self.variable_position,
        }
