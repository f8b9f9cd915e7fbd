"""One-step rewriting of meta-terms.

Mode no applies a normal-order rule at the root. Mode iS applies a
transformation at a surface position, the root included.
"""
from dataclasses import dataclass
from typing import Any, Literal

from beartype import beartype

from calculus import RuleEntry, noreduction_lhs_set, transformation_lhs_set
from diagrams.matching import Path, instantiate_rhs, meta_match, replace_at
from term_core import Term, canonical, to_text

Mode = Literal["no", "iS"]
Direction = Literal["from-left", "from-right"]


@dataclass(frozen=True)
class MetaStep:
    direction: Direction
    label: tuple[Mode, str]
    before: Term
    after: Term
    position: Path = ()

    @property
    def mode(self) -> Mode:
        return self.label[0]

    @property
    def rule(self) -> str:
        return self.label[1]

    def to_json(self) -> dict[str, Any]:
        return {
            "direction": self.direction,
            "label": f"{self.mode},{self.rule}",
            "position": list(self.position),
            "before": to_text(self.before),
            "after": to_text(self.after),
        }


def _rules(mode: Mode) -> list[RuleEntry]:
    return noreduction_lhs_set() if mode == "no" else transformation_lhs_set()


@beartype
def rewrite_successors(
    t: Term, mode: Mode, direction: Direction = "from-left"
) -> list[MetaStep]:
    """All one-step successors of t in mode, canonicalized, without
    duplicates per rule"""
    steps: list[MetaStep] = []
    seen: set[tuple[str, Term]] = set()
    positions: Literal["root", "surface"] = "root" if mode == "no" else "surface"
    for rule in _rules(mode):
        for m, path in meta_match(rule.lhs, t, rule.delta1, positions):
            after = canonical(replace_at(t, path, instantiate_rhs(rule.rhs, m)))
            if (rule.name, after) in seen:
                continue
            seen.add((rule.name, after))
            steps.append(MetaStep(direction, (mode, rule.name), t, after, path))
    return steps


@beartype
def replays(step: MetaStep) -> bool:
    """step.after is reproduced by rewriting step.before"""
    target = canonical(step.after)
    return any(
        s.after == target and s.label == step.label
        for s in rewrite_successors(step.before, step.mode, step.direction)
    )
