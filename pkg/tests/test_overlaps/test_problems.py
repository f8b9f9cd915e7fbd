from calculus import NORMAL_ORDER_COUNT, TRANSFORMATION_COUNT, find_rule
from overlaps import SURFACE, initial_forking_problems, problem_for, renamed_no_rule
from term_core import ContextClass, app, bv, ctx, exp_var, lam, variables


def test_forking_problem_count() -> None:
    problems = initial_forking_problems()
    assert len(problems) == TRANSFORMATION_COUNT * NORMAL_ORDER_COUNT == 136
    assert problems[0].origin == ("lbeta", "no-lbeta/1")
    assert problems[-1].origin == ("cp-e/abs", "no-llet-e-c")
    assert len({p.origin for p in problems}) == 136


def test_forking_problem_selection() -> None:
    problems = initial_forking_problems(["cp-e"])
    assert len(problems) == 34
    assert {p.origin[0] for p in problems if p.origin} == {"cp-e/var", "cp-e/abs"}
    assert len(initial_forking_problems(["lbeta"], ["no-lbeta"])) == 4


def test_initial_problem_shape() -> None:
    problem = problem_for("lbeta", "no-lbeta/1")
    (equation,) = problem.equations
    assert equation.carrier
    assert problem.carrier_ctx == SURFACE
    assert equation.left == SURFACE(find_rule("lbeta").lhs)
    x, s, r = bv("x'"), exp_var("s'"), exp_var("r'")
    assert equation.right == ctx("A", ContextClass.A)(app(lam(x, s), r))
    assert problem.origin == ("lbeta", "no-lbeta/1")
    assert problem.left_term == equation.left


def test_renamed_no_rule_is_apart() -> None:
    transformation = find_rule("cp-e/abs")
    original = find_rule("no-cp-e-c/abs")
    renamed = renamed_no_rule(transformation, original)
    assert renamed.name == original.name
    assert renamed.delta2 == original.delta2
    taken = {v.name for v in variables(transformation.lhs) if not v.is_chain}
    assert not taken & {v.name for v in variables(renamed.lhs) if not v.is_chain}
    assert {"x'", "w'", "t'", "Env'"} <= {v.name for v in variables(renamed.lhs)}

    problem = problem_for("cp-e/abs", "no-cp-e-c/abs")
    assert problem.delta2 == original.delta2
    assert problem.equations[0].right == renamed.lhs
