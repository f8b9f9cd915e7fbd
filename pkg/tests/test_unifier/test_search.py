import random
from collections.abc import Callable
from typing import Any

import pytest

from overlaps import SURFACE, initial_forking_problems
from term_core import *
from unifier import *

x, y, z = bv("x"), bv("y"), bv("z")
a, b, c = bv("a"), bv("b"), bv("c")
s, t = exp_var("s"), exp_var("t")
E = env_var("E")


def problem(left: Term, right: Term) -> UnifProblem:
    return UnifProblem((Equation(left, right),))


def test_decomposition() -> None:
    finals = solve(problem(app(s, var(x)), app(var(y), var(z))))
    assert len(finals) == 1
    (final,) = finals
    assert final.image(s) == var(y)
    assert final.s_bv == ((x, z),)
    assert final.dvc_ok
    assert final.delta1 == frozenset()


def test_clash_and_occurs_check() -> None:
    assert solve(problem(app(s, t), lam(x, s))) == []
    assert solve(problem(s, app(s, var(x)))) == []


def test_context_against_abstraction() -> None:
    X = ctx("X", ContextClass.C)
    finals = solve(problem(X(var(x)), lam(y, var(z))))
    assert len(finals) == 1
    assert finals[0].image(X) == lam(y, HOLE)
    assert finals[0].s_bv == ((x, z),)

    X_A = ctx("X", ContextClass.A)
    assert solve(problem(X_A(var(x)), lam(y, var(z)))) == []


def test_trace() -> None:
    X = ctx("X", ContextClass.C)
    (final,) = solve(problem(X(var(x)), lam(y, var(z))), record_trace=True)
    assert [step.rule for step in final.trace] == ["Empty-C", "Dec-Lam", "Empty-C", "Dec", "Solve"]
    assert final.trace[0].before == Measure(0, 7)
    assert final.trace[-1].after == Measure(0, 0)
    for step in final.trace:
        assert step.to_json()["rule"] == step.rule

    (untraced,) = solve(problem(X(var(x)), lam(y, var(z))))
    assert untraced.trace == ()


def test_env_equation() -> None:
    finals = solve(problem(env_star([bind(x, s)], E), env_star([bind(y, var(z))])))
    assert len(finals) == 1
    (final,) = finals
    assert final.image(E) == EMPTY_ENV
    assert final.image(s) == var(z)
    assert final.s_bv == ((x, y),)


def test_env_permutations() -> None:
    left = env_star([bind(x, s), bind(y, t)])
    right = env_star([bind(a, var(a)), bind(b, lam(c, var(c)))])
    finals = solve(problem(left, right))
    assert len(finals) == 2
    images = {(f.image(s), f.image(t)) for f in finals}
    assert images == {
        (var(a), lam(c, var(c))),
        (lam(c, var(c)), var(a)),
    }
    assert all(f.dvc_ok for f in finals)
    for f in finals:
        assert is_sound(f, [(left, right)])


def test_dvc_violation_is_marked() -> None:
    left = lam(x, lam(y, s))
    right = lam(a, lam(a, var(a)))
    (final,) = solve(problem(left, right))
    assert not final.dvc_ok
    report = check_dvc(final, problem(left, right))
    assert report.violated
    assert report.witnesses == (a,)
    assert report.to_json()


def test_step_budget() -> None:
    with pytest.raises(StepBudgetExceeded) as info:
        search(problem(app(s, var(x)), app(var(y), var(z))), step_budget=1)
    assert info.value.steps == 2


def test_deduplicate() -> None:
    def final(image: Term) -> FinalSystem:
        return FinalSystem(
            s_bv=(),
            s_other=((s, image),),
            delta1=frozenset(),
            delta2=frozenset(),
            dvc_ok=True,
            least_model=(),
        )

    first = final(app(exp_var("e1"), var(x)))
    renamed = final(app(exp_var("e5"), var(x)))
    other = final(app(var(x), exp_var("e1")))
    assert canonical_key(first) == canonical_key(renamed)
    assert deduplicate([first, renamed, other]) == [first, other]


def test_invalid_problem() -> None:
    with pytest.raises(InapplicableRuleError):
        solve(problem(s, E))


def test_copy_chain_final(
    copy_chain_problem: UnifProblem,
    copy_chain_finals: list[FinalSystem],
    golden: Callable[[str], Any],
) -> None:
    expected = golden("copy_chain_final.json")
    assert copy_chain_problem.origin == tuple(expected["origin"])

    def chain_partner(final: FinalSystem) -> Var | None:
        for left, rep in final.s_bv:
            if left == bv("z") and rep.is_chain:
                return rep
        return None

    def merged_apart(final: FinalSystem) -> bool:
        match final.image(ctx("C", ContextClass.C)):
            case CtxApp(_, Fn("app", (CtxApp(_, Fn("var", _)), CtxApp(_, Hole())))):
                return True
        return False

    def bound_apart(final: FinalSystem) -> bool:
        primed = {frozenset({bv(name), bv(f"{name}'")}) for name in ("x", "w")}
        return primed <= final.bv_pairs()

    candidates = [
        f
        for f in copy_chain_finals
        if f.image(SURFACE) == HOLE
        and bound_apart(f)
        and chain_partner(f) is not None
        and len(f.delta2) == 3
        and merged_apart(f)
    ]
    assert len(candidates) == 1
    (final,) = candidates
    partner = chain_partner(final)
    assert partner is not None and isinstance(partner.index, IntVar)
    n_b = partner.index
    (n_a,) = [c.left for c in final.delta2 if c.relation == "+1=" and c.right == n_b]

    def filled(text: str) -> str:
        return text.replace("<a>", n_a.name).replace("<b>", n_b.name)

    document = final.to_json()
    s_other = dict(document["s_other"])
    for key, image in expected["s_other"].items():
        assert s_other[key] == filled(image)
    assert document["s_bv"] == [[filled(p) for p in pair] for pair in expected["s_bv"]]
    assert sorted(document["delta2"]) == sorted(filled(c) for c in expected["delta2"])
    assert document["least_model"] == {filled(k): v for k, v in expected["least_model"].items()}
    assert document["dvc_ok"] == expected["dvc_ok"]
    assert document["variable_position"] == expected["variable_position"]

    env_image = final.image(env_var("Env"))
    assert env_image is not None
    n1, n2 = IntVar("N1"), IntVar("N2")
    x_primed = bv("x'")
    assert lc_equal(
        env_image,
        env_star(
            [
                bind(chain_bv(n1), chain_ctx(n1)(var(x_primed))),
                Chain(n1, n_a),
                Chain(n_b, n2),
            ],
            env_var("Env'"),
        ),
    )

    context = final.image(ctx("C", ContextClass.C))
    chain_context = final.image(chain_ctx(n_b))
    assert context is not None and chain_context is not None
    match context, chain_context:
        case (
            CtxApp(z1, Fn("app", (CtxApp(x1, Fn("var", (y_a,))), CtxApp(c1, Hole())))),
            CtxApp(z2, Fn("app", (CtxApp(x2, Hole()), CtxApp(c2, Fn("var", (x_bound,)))))),
        ):
            assert (z1, x1, c1) == (z2, x2, c2)
            assert z1.cls == ContextClass.A and x1.cls == ContextClass.A
            assert c1.cls == ContextClass.C
            assert y_a == chain_bv(n_a)
            assert x_bound == bv("x")
            roles = {
                z1: ctx("Z", ContextClass.A),
                x1: ctx("X", ContextClass.A),
                c1: ctx("W", ContextClass.C),
            }
            images = {"C": context, f"A_{{{n_b.name}}}": chain_context}
            assert {
                key: to_text(rename(image, {}, roles, {})) for key, image in images.items()
            } == {filled(key): filled(image) for key, image in expected["contexts"].items()}
        case _:
            pytest.fail(f"unexpected context images {context} and {chain_context}")

    assert check_dvc(final, copy_chain_problem).violated is False
    assert is_sound(final, [(eq.left, eq.right) for eq in copy_chain_problem.equations])


def test_finals_are_sound(
    copy_chain_problem: UnifProblem, copy_chain_finals: list[FinalSystem]
) -> None:
    equations = [(eq.left, eq.right) for eq in copy_chain_problem.equations]
    assert copy_chain_finals
    for final in copy_chain_finals:
        assert holds(final.delta2, final.model)
        if final.dvc_ok:
            assert is_sound(final, equations)


class InstancePairs:
    """Random linear patterns together with a ground instance of each"""

    def __init__(self, seed: int) -> None:
        self.rng = random.Random(seed)
        self.n = 0

    def fresh(self, prefix: str) -> str:
        self.n += 1
        return f"{prefix}{self.n}"

    def ground(self, depth: int) -> Term:
        kind = self.rng.choice(["var", "app", "lam", "let"] if depth > 0 else ["var"])
        if kind == "var":
            return var(self.rng.choice([x, y, z]))
        if kind == "app":
            return app(self.ground(depth - 1), self.ground(depth - 1))
        binder = bv(self.fresh("b"))
        if kind == "lam":
            return lam(binder, self.ground(depth - 1))
        return let(env_star([bind(binder, self.ground(depth - 1))]), self.ground(depth - 1))

    def pair(self, depth: int) -> tuple[Term, Term]:
        kinds = ["meta", "var"] + (["app", "lam", "let", "context"] if depth > 0 else [])
        kind = self.rng.choice(kinds)
        if kind == "meta":
            return exp_var(self.fresh("p")), self.ground(self.rng.randint(0, 2))
        if kind == "var":
            v = var(self.rng.choice([x, y, z]))
            return v, v
        if kind == "app":
            (l1, r1), (l2, r2) = self.pair(depth - 1), self.pair(depth - 1)
            return app(l1, l2), app(r1, r2)
        if kind == "context":
            hole_ctx = ctx(self.fresh("A"), ContextClass.A)
            left, right = self.pair(depth - 1)
            return hole_ctx(left), app(right, self.ground(1))
        binder = bv(self.fresh("b"))
        if kind == "lam":
            left, right = self.pair(depth - 1)
            return lam(binder, left), lam(binder, right)
        (lb, rb), (left, right) = self.pair(depth - 1), self.pair(depth - 1)
        extra = [bind(bv(self.fresh("b")), self.ground(1))] if self.rng.random() < 0.5 else []
        return (
            let(env_star([bind(binder, lb)], env_var(self.fresh("Env"))), left),
            let(env_star([bind(binder, rb), *extra]), right),
        )


def assert_measure_decreases(final: FinalSystem) -> None:
    for step in final.trace:
        if step.rule == "Empty-C" and step.after == step.before:
            # the branch that only records the context as non-empty
            continue
        assert step.after < step.before, step.to_json()


def test_instances_are_found() -> None:
    pairs = InstancePairs(seed=2)
    for _ in range(20):
        left, right = pairs.pair(depth=2)
        finals = solve(problem(left, right), record_trace=True)
        assert finals, (to_text(left), to_text(right))
        assert any(is_sound(f, [(left, right)]) for f in finals)
        for final in finals:
            assert_measure_decreases(final)
            if final.dvc_ok:
                assert is_sound(final, [(left, right)])


@pytest.mark.slow
def test_measure_and_soundness_on_all_problems() -> None:
    problems = initial_forking_problems()
    assert len(problems) == 136
    for forking in problems:
        equations = [(eq.left, eq.right) for eq in forking.equations]
        for final in solve(forking, record_trace=True):
            assert final.trace
            assert_measure_decreases(final)
            assert holds(final.delta2, final.model)
            if final.dvc_ok:
                assert is_sound(final, equations), forking.origin
