"""Integer constraints over chain indices"""
from dataclasses import dataclass
from typing import Literal

from term_core.terms import IntVar

Relation = Literal["<", "+1="]


@dataclass(frozen=True, order=True)
class IntConstraint:
    """left < right, or left + 1 = right"""

    left: IntVar
    relation: Relation
    right: IntVar

    def __str__(self) -> str:
        if self.relation == "<":
            return f"{self.left} < {self.right}"
        return f"{self.left}+1 = {self.right}"


def lt(left: IntVar, right: IntVar) -> IntConstraint:
    return IntConstraint(left, "<", right)


def succ(left: IntVar, right: IntVar) -> IntConstraint:
    return IntConstraint(left, "+1=", right)
