"""Initial forking problems.

For a transformation lhs l_T and a normal-order lhs l_no the problem is
S(l_T) =. l_no with S a fresh surface-context variable: the transformation
is applied somewhere inside a surface context of the expression that the
normal-order rule reduces at its root.
"""
from beartype import beartype

from calculus import RuleEntry, find_rule, rename_apart, rule_names_of, select_rules
from term_core import ContextClass, CtxVar
from unifier import Equation, UnifProblem

SURFACE = CtxVar("S", ContextClass.S)


@beartype
def renamed_no_rule(transformation: RuleEntry, no_rule: RuleEntry) -> RuleEntry:
    """no_rule with its variables primed apart from the transformation's"""
    taken = rule_names_of(transformation.lhs) | {SURFACE.name}
    return rename_apart(no_rule, taken)


@beartype
def initial_problem(transformation: RuleEntry, no_rule: RuleEntry) -> UnifProblem:
    renamed = renamed_no_rule(transformation, no_rule)
    return UnifProblem(
        equations=(Equation(SURFACE(transformation.lhs), renamed.lhs, carrier=True),),
        delta1=transformation.delta1 | renamed.delta1,
        delta2=transformation.delta2 | renamed.delta2,
        origin=(transformation.name, no_rule.name),
        carrier_ctx=SURFACE,
    )


@beartype
def problem_for(transformation: str, no_rule: str) -> UnifProblem:
    """Raises UnknownRuleError for names outside the catalogs"""
    return initial_problem(
        find_rule(transformation, "transformation"), find_rule(no_rule, "no")
    )


@beartype
def initial_forking_problems(
    transformations: list[str] | None = None, no_rules: list[str] | None = None
) -> list[UnifProblem]:
    """One problem per selected (transformation, normal-order rule) pair,
    transformation-major in catalog order"""
    return [
        initial_problem(t, no)
        for t in select_rules(transformations, "transformation")
        for no in select_rules(no_rules, "no")
    ]
