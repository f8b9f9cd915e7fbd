import pytest

from term_core import *
from unifier import *

x, y, z = bv("x"), bv("y"), bv("z")
s, t = exp_var("s"), exp_var("t")
E = env_var("E")
X = ctx("X", ContextClass.C)


def state_of(*equations: Equation) -> UnifState:
    return UnifState(pending=tuple(equations))


def test_term_measure() -> None:
    assert term_measure(let(EMPTY_ENV, var(x))) == Measure(1, 4)
    assert term_measure(env(bind(x, var(y)), EMPTY_ENV)) == Measure(0, 12)
    assert term_measure(env(Chain(IntVar("N1"), IntVar("N2")), EMPTY_ENV)) == Measure(0, 2)
    assert term_measure(X(var(x))) == Measure(0, 3)
    assert Measure(1, 0) > Measure(0, 100)


def test_state_measure() -> None:
    state = state_of(Equation(X(var(x)), lam(y, var(z))))
    assert measure(state) == Measure(0, 7)
    assert measure(state_of()) == Measure(0, 0)


def test_applicable_rules() -> None:
    state = state_of(
        Equation(app(s, var(x)), app(var(y), var(z))),
        Equation(s, lam(x, s)),
        Equation(X(var(x)), lam(y, var(z))),
        Equation(env_star([bind(x, s)], E), env_star([bind(y, t)])),
        Equation(var(x), var(x)),
        Equation(x, y),
        Equation(E, EMPTY_ENV),
        Equation(EMPTY_ENV, env_star([bind(x, s)])),
    )
    assert applicable_rules(state, 0) == ["Dec"]
    assert applicable_rules(state, 1) == ["Solve"]
    assert applicable_rules(state, 2) == ["Empty-C"]
    assert applicable_rules(state, 3) == ["Dec-E", "Dec-Ch", "Solve-E"]
    assert applicable_rules(state, 4) == ["Trivial"]
    assert applicable_rules(state, 5) == ["Solve-BV"]
    assert applicable_rules(state, 6) == ["Solve"]
    assert applicable_rules(state, 7) == ["Fail-E"]


def test_context_rules_by_class() -> None:
    for cls, head, expected in [
        (ContextClass.A, app(s, t), ["Dec-CA"]),
        (ContextClass.S, app(s, t), ["Dec-CA", "Dec-CC"]),
        (ContextClass.A, let(E, s), ["Fail"]),
        (ContextClass.C, let(E, s), ["Dec-CC", "Dec-CL"]),
        (ContextClass.C, lam(y, s), ["Dec-Lam"]),
        (ContextClass.S, lam(y, s), ["Fail-Lam"]),
        (ContextClass.C, var(y), ["Fail-Var"]),
    ]:
        hole_ctx = ctx("Y", cls)
        state = UnifState(
            pending=(Equation(hole_ctx(var(x)), head),), delta1=frozenset({hole_ctx})
        )
        assert applicable_rules(state, 0) == expected


def test_merge_rules() -> None:
    a1, a2 = ctx("A1", ContextClass.A), ctx("A2", ContextClass.A)
    c1 = ctx("C1", ContextClass.C)
    for left, right, expected in [
        (a1, a2, ["Merge-P"]),
        (a1, c1, ["Merge-P", "Merge-FA"]),
        (X, c1, ["Merge-P", "Merge-FC"]),
    ]:
        state = UnifState(
            pending=(Equation(left(var(x)), right(var(y))),), delta1=frozenset({left, right})
        )
        assert applicable_rules(state, 0) == expected


def test_merge_fc_splits() -> None:
    c1 = ctx("C1", ContextClass.C)
    state = UnifState(
        pending=(Equation(X(var(x)), c1(var(y))),), delta1=frozenset({X, c1})
    )
    outcome = apply_rule(state, RuleChoice("Merge-FC", 0))
    assert isinstance(outcome, list)
    assert len(outcome) == 5


def test_select_equation_prefers_failure() -> None:
    state = state_of(
        Equation(env_star([bind(x, s)], E), env_star([bind(y, t)])),
        Equation(app(s, t), lam(x, s)),
    )
    assert select_equation(state) == 1
    assert expand(state) is FAIL


def test_select_equation_order() -> None:
    state = state_of(
        Equation(X(var(x)), lam(y, var(z))),
        Equation(s, var(x)),
        Equation(var(x), var(y)),
    )
    assert select_equation(state) == 2


def test_apply_rule_errors() -> None:
    state = state_of(Equation(X(var(x)), lam(y, var(z))))
    with pytest.raises(InapplicableRuleError):
        apply_rule(state, RuleChoice("Dec", 0))
    with pytest.raises(InapplicableRuleError):
        apply_rule(state, RuleChoice("Empty-C", 3))


def test_empty_c_branches() -> None:
    state = state_of(Equation(X(var(x)), lam(y, var(z))))
    outcome = apply_rule(state, RuleChoice("Empty-C", 0))
    assert isinstance(outcome, list)
    non_empty, empty = outcome
    assert X in non_empty.delta1
    assert non_empty.pending == state.pending
    assert empty.solved == ((X, HOLE),)
    assert empty.pending == (Equation(var(x), lam(y, var(z))),)


def test_dec_lam() -> None:
    state = UnifState(pending=(Equation(X(var(x)), lam(y, var(z))),), delta1=frozenset({X}))
    outcome = apply_rule(state, RuleChoice("Dec-Lam", 0))
    assert isinstance(outcome, list)
    (after,) = outcome
    ((key, image),) = after.solved
    assert key == X
    match image:
        case Fn("lam", (bound, CtxApp(fresh, Hole()))):
            assert bound == y
            assert fresh.cls == ContextClass.C
        case _:
            pytest.fail(f"unexpected image {image}")
    assert after.pending == (Equation(fresh(var(x)), var(z)),)


def test_occurs_check() -> None:
    state = state_of(Equation(s, app(s, var(x))))
    assert apply_rule(state, RuleChoice("Solve", 0)) is FAIL


def test_solve_e_needs_variable_tail() -> None:
    state = state_of(Equation(env_star([bind(x, s)], E), env_star([bind(y, t)])))
    assert apply_rule(state, RuleChoice("Solve-E", 0)) is FAIL
    outcome = apply_rule(state, RuleChoice("Dec-E", 0))
    assert isinstance(outcome, list)
    assert len(outcome) == 1
    assert outcome[0].pending[0] == Equation(bind(x, s), bind(y, t))


def test_solve_e_moves_binding() -> None:
    E2 = env_var("E2")
    state = state_of(Equation(env_star([bind(x, s)], E), env_star([bind(y, t)], E2)))
    outcome = apply_rule(state, RuleChoice("Solve-E", 0))
    assert isinstance(outcome, list)
    ((key, image),) = outcome[0].solved
    assert key == E2
    assert env_view(image).components == (bind(x, s),)


def test_solve_e_moves_one_binding_per_step() -> None:
    E2 = env_var("E2")
    left = env_star([bind(x, s), bind(z, t)], E)
    state = state_of(Equation(left, env_star([bind(y, t)], E2)))
    outcome = apply_rule(state, RuleChoice("Solve-E", 0))
    assert isinstance(outcome, list)
    (successor,) = outcome
    ((key, image),) = successor.solved
    assert key == E2
    view = env_view(image)
    assert view.components == (bind(x, s),)
    assert isinstance(view.tail, Var) and view.tail.sort == Sort.ENV
    assert view.tail not in (E, E2)
    (rest,) = successor.pending
    assert lc_equal(rest.left, env_star([bind(z, t)], E))
    assert lc_equal(rest.right, env_star([bind(y, t)], view.tail))

    # the second binding takes a step of its own
    again = apply_rule(successor, RuleChoice("Solve-E", 0))
    assert isinstance(again, list)
    ((key, image),) = again[0].solved[1:]
    assert key == view.tail
    assert env_view(image).components == (bind(z, t),)
