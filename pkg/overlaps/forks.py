"""Forks: the two one-step successors of an overlap instance"""
from dataclasses import dataclass
from typing import Any, Literal

from beartype import beartype

from calculus import find_rule, print_expr
from overlaps.problems import SURFACE, renamed_no_rule
from term_core import (
    HOLE,
    Substitution,
    Term,
    canonical,
    instantiate,
    plug,
    to_text,
)
from unifier import FinalSystem, symbolic_substitution

Classification = Literal["critical", "variable-position"]


class ForkError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


@dataclass(frozen=True)
class Fork:
    """A meta-expression with one normal-order step and one transformation
    step inside a surface context.

    Attributes:
        source: the overlap instance sigma(S(l_T)).
        left: (normal-order rule, successor at the root).
        right: (transformation, surface context, successor).
    """

    source: Term
    left: tuple[str, Term]
    right: tuple[str, Term, Term]

    @property
    def no_rule(self) -> str:
        return self.left[0]

    @property
    def transformation(self) -> str:
        return self.right[0]

    @property
    def surface(self) -> Term:
        return self.right[1]

    @property
    def is_degenerate(self) -> bool:
        return canonical(self.left[1]) == canonical(self.right[2])

    def to_json(self) -> dict[str, Any]:
        return {
            "source": to_text(self.source),
            "left": {"rule": self.left[0], "term": to_text(self.left[1])},
            "right": {
                "rule": self.right[0],
                "surface": to_text(self.right[1]),
                "term": to_text(self.right[2]),
            },
        }

    def render(self) -> str:
        return "\n".join(
            [
                f"  {print_expr(self.source)}",
                f"  (no,{self.no_rule}) -> {print_expr(self.left[1])}",
                f"  (iS,{self.transformation}) -> {print_expr(self.right[2])}",
            ]
        )


@dataclass(frozen=True)
class OverlapRecord:
    final: FinalSystem
    fork: Fork
    classification: Classification

    def to_json(self) -> dict[str, Any]:
        return {
            "origin": [self.fork.transformation, self.fork.no_rule],
            "classification": self.classification,
            "final": self.final.to_json(),
            "fork": self.fork.to_json(),
        }


@beartype
def build_fork(final: FinalSystem) -> Fork:
    """Apply the symbolic solution to both rules of final.origin.

    Raises ForkError for systems without an origin or without the
    distinct variable convention.
    """
    if final.origin is None:
        raise ForkError("Final system does not stem from a forking problem")
    if not final.dvc_ok:
        raise ForkError(f"Final system of {final.origin} violates the DVC")
    transformation = find_rule(final.origin[0], "transformation")
    no_rule = renamed_no_rule(transformation, find_rule(final.origin[1], "no"))
    sigma: Substitution = symbolic_substitution(final)
    surface = instantiate(sigma, SURFACE(HOLE))
    source = instantiate(sigma, SURFACE(transformation.lhs))
    left = instantiate(sigma, no_rule.rhs)
    right = plug(surface, instantiate(sigma, transformation.rhs))
    return Fork(
        source=source,
        left=(no_rule.name, left),
        right=(transformation.name, surface, right),
    )


@beartype
def classify(final: FinalSystem) -> Classification:
    return "variable-position" if final.variable_position else "critical"
