"""The distinct variable convention as a filter on final systems.

The instance of the initial left term must bind every BV variable at
most once. A chain BCh(N1, N2) left in the instance contributes its last
binder y_{N2}; the binders inside a chain are distinct by construction.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Any

from beartype import beartype

from term_core import Chain, Fn, Term, Var, chain_bv, instantiate, subterms, to_text
from unifier.problem import FinalSystem, UnifProblem
from unifier.solution import symbolic_substitution


@dataclass(frozen=True)
class DvcReport:
    """Attributes:
    m_bv: binder occurrences with their multiplicity.
    violated: some BV variable is bound twice.
    witnesses: the variables bound more than once, by label.
    """

    m_bv: tuple[tuple[Var, int], ...]
    violated: bool
    witnesses: tuple[Var, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "m_bv": {x.label: count for x, count in self.m_bv},
            "violated": self.violated,
            "witnesses": [x.label for x in self.witnesses],
        }


def binders(t: Term) -> Counter[Var]:
    found: Counter[Var] = Counter()
    for s in subterms(t):
        match s:
            case Fn("lam" | "bind", (Var() as x, _)):
                found[x] += 1
            case Chain(_, end):
                found[chain_bv(end)] += 1
    return found


@beartype
def dvc_report(final: FinalSystem, left_term: Term) -> DvcReport:
    instance = instantiate(symbolic_substitution(final), left_term)
    counts = binders(instance)
    m_bv = tuple(sorted(counts.items(), key=lambda item: item[0].label))
    witnesses = tuple(x for x, count in m_bv if count >= 2)
    return DvcReport(m_bv, bool(witnesses), witnesses)


@beartype
def check_dvc(final: FinalSystem, initial: UnifProblem) -> DvcReport:
    return dvc_report(final, initial.left_term)


def describe(report: DvcReport) -> str:
    if not report.violated:
        return "DVC holds"
    return "DVC violated by " + ", ".join(to_text(x) for x in report.witnesses)
