from calculus import find_rule
from diagrams import instantiate_rhs, match_root, meta_match, surface_positions
from diagrams.matching import decompositions, replace_at
from term_core import *

x, y, z = bv("x"), bv("y"), bv("z")
t = app(lam(x, var(x)), var(y))


def test_decompositions() -> None:
    pair = app(var(x), var(y))
    assert len(list(decompositions(pair, ContextClass.A))) == 2
    assert len(list(decompositions(pair, ContextClass.S))) == 3
    assert (app(HOLE, var(y)), var(x)) in list(decompositions(pair, ContextClass.A))
    body = lam(x, var(x))
    assert len(list(decompositions(body, ContextClass.S))) == 1
    assert len(list(decompositions(body, ContextClass.C))) == 2


def test_surface_positions() -> None:
    assert [path for path, _ in surface_positions(t)] == [(), (0,), (1,)]
    letrec = let(env_star([bind(x, var(y))]), var(x))
    paths = dict(surface_positions(letrec))
    assert paths[()] == letrec
    assert var(x) in paths.values()
    assert var(y) in paths.values()


def test_match_root() -> None:
    lbeta = find_rule("lbeta")
    (m,) = match_root(lbeta.lhs, t)
    assert m.terms[exp_var("s")] == var(x)
    assert m.terms[exp_var("r")] == var(y)
    assert lc_equal(instantiate_rhs(lbeta.rhs, m), let(env_star([bind(x, var(y))]), var(x)))
    assert match_root(lbeta.lhs, var(x)) == []


def test_meta_match_surface() -> None:
    lbeta = find_rule("lbeta")
    nested = app(var(z), t)
    assert meta_match(lbeta.lhs, nested) == []
    found = meta_match(lbeta.lhs, nested, positions="surface")
    assert [path for _, path in found] == [(1,)]
    under_lambda = lam(z, t)
    assert meta_match(lbeta.lhs, under_lambda, positions="surface") == []


def test_nonempty_contexts() -> None:
    rule = find_rule("no-lbeta/1")
    assert isinstance(rule.lhs, CtxApp)
    context = rule.lhs.var
    assert match_root(rule.lhs, t)
    assert match_root(rule.lhs, t, frozenset({context})) == []


def test_environment_matching_modulo_lc() -> None:
    cp_in = find_rule("cp-in/var")
    letrec = let(env_star([bind(z, var(y)), bind(x, var(z))]), var(x))
    (m,) = match_root(cp_in.lhs, letrec)
    expected = let(env_star([bind(x, var(z)), bind(z, var(y))]), var(z))
    assert lc_equal(instantiate_rhs(cp_in.rhs, m), expected)


def test_replace_at() -> None:
    assert replace_at(t, (1,), var(z)) == app(lam(x, var(x)), var(z))
    assert replace_at(t, (), var(z)) == var(z)


def test_surface_positions_enter_rigid_contexts() -> None:
    expected = [(), (0,), (0, 0), (0, 1)]
    for cls in (ContextClass.A, ContextClass.S):
        assert [path for path, _ in surface_positions(ctx("D", cls)(t))] == expected
    assert [path for path, _ in surface_positions(ctx("C", ContextClass.C)(t))] == [()]
