"""The rules of the unifier.

Every rule takes a state and the index of a pending equation and returns
its successor states, one per don't-know alternative, or FAIL. The
selection of the equation (don't-care) lives in select_equation; the
rules applicable to one equation are listed by applicable_rules.

Orientation: equations keep the side that stems from the transformation
(and carries its redex) on the left. Context variables heading a side
are guessed empty or non-empty lazily, when the equation is selected.
"""
import dataclasses
from collections.abc import Callable
from dataclasses import dataclass

from beartype import beartype

from term_core import (
    HOLE,
    Chain,
    ContextClass,
    CtxApp,
    CtxVar,
    EnvView,
    Fn,
    IntConstraint,
    IntVar,
    Sort,
    Substitution,
    Term,
    Var,
    app,
    bind,
    canonical,
    chain_bv,
    chain_ctx,
    context_variables,
    env_star,
    env_view,
    instantiate,
    lam,
    let,
    lt,
    succ,
    var,
    variables,
)
from unifier.constraints import constraints_satisfiable
from unifier.errors import InapplicableRuleError
from unifier.measure import Measure
from unifier.problem import Equation, Key, Position, TraceStep, UnifState, measure


class _Fail:
    def __repr__(self) -> str:
        return "FAIL"


FAIL = _Fail()
Outcome = list[UnifState] | _Fail


@dataclass(frozen=True)
class RuleChoice:
    rule: str
    index: int


# equation kinds, in selection priority order
_FAILING, _DECOMPOSE, _SOLVE, _CONTEXT, _MULTISET = range(5)


def _head(t: Term) -> CtxVar | None:
    return t.var if isinstance(t, CtxApp) else None


def _is_solvable_var(t: Term) -> bool:
    return isinstance(t, Var) and t.sort != Sort.BV


def _is_env(t: Term) -> bool:
    return isinstance(t, Fn) and t.symbol in ("env", "emptyEnv")


def _same(eq: Equation) -> bool:
    if eq.left == eq.right:
        return True
    if _is_env(eq.left) and _is_env(eq.right):
        return canonical(eq.left) == canonical(eq.right)
    return False


def _context_rules(x: CtxVar, t: Fn) -> list[str]:
    match t.symbol:
        case "app":
            return ["Dec-CA"] if x.cls == ContextClass.A else ["Dec-CA", "Dec-CC"]
        case "let":
            return ["Fail"] if x.cls == ContextClass.A else ["Dec-CC", "Dec-CL"]
        case "lam":
            return ["Dec-Lam"] if x.cls == ContextClass.C else ["Fail-Lam"]
        case "var":
            return ["Fail-Var"]
    raise InapplicableRuleError(f"No context rule for {x} against {t.symbol}")


def _merge_rules(x: CtxVar, y: CtxVar) -> list[str]:
    a_count = [x.cls, y.cls].count(ContextClass.A)
    if a_count == 2:
        return ["Merge-P"]
    if a_count == 1:
        return ["Merge-P", "Merge-FA"]
    return ["Merge-P", "Merge-FC"]


def _classify(eq: Equation, delta1: frozenset[CtxVar]) -> tuple[int, list[str]]:
    left, right = eq.left, eq.right
    if _same(eq):
        return _FAILING, ["Trivial"]
    if isinstance(left, Var) and isinstance(right, Var) and left.sort == Sort.BV:
        return _DECOMPOSE, ["Solve-BV"]
    if _is_env(left) or _is_env(right):
        lview, rview = env_view(left), env_view(right)
        for view in (lview, rview):
            if view.is_bare and isinstance(view.tail, Var):
                return _SOLVE, ["Solve"]
        if lview.is_bare or rview.is_bare:
            return _FAILING, ["Fail-E"]
        return _MULTISET, ["Dec-E", "Dec-Ch", "Solve-E"]
    if _is_solvable_var(left) or _is_solvable_var(right):
        return _SOLVE, ["Solve"]
    if isinstance(left, Fn) and isinstance(right, Fn):
        if left.symbol == right.symbol:
            return _DECOMPOSE, ["Dec"]
        return _FAILING, ["Fail"]
    lx, rx = _head(left), _head(right)
    if (lx is not None and lx not in delta1) or (rx is not None and rx not in delta1):
        return _CONTEXT, ["Empty-C"]
    if lx is not None and rx is not None:
        return _CONTEXT, _merge_rules(lx, rx)
    x = lx if lx is not None else rx
    other = right if lx is not None else left
    assert x is not None and isinstance(other, Fn)
    found = _context_rules(x, other)
    return (_FAILING if found[0].startswith("Fail") else _CONTEXT), found


@beartype
def applicable_rules(state: UnifState, index: int) -> list[str]:
    """Don't-know alternatives for the equation at index"""
    return _classify(state.pending[index], state.delta1)[1]


@beartype
def select_equation(state: UnifState) -> int:
    """Index of the equation to work on: failures and decompositions
    first, multiset equations last"""
    best, best_kind = 0, _MULTISET + 1
    for i, eq in enumerate(state.pending):
        kind, _ = _classify(eq, state.delta1)
        if kind < best_kind:
            best, best_kind = i, kind
            if kind == _FAILING:
                break
    return best


# state construction


_KEEP = object()


def _substitute_eq(sigma: Substitution, eq: Equation) -> Equation:
    return Equation(instantiate(sigma, eq.left), instantiate(sigma, eq.right), eq.carrier)


def _subst_of(bindings: tuple[tuple[Key, Term], ...]) -> Substitution:
    terms = {k: t for k, t in bindings if isinstance(k, Var)}
    contexts = {k: t for k, t in bindings if isinstance(k, CtxVar)}
    return Substitution(terms, contexts)


def _successor(
    state: UnifState,
    rule: str,
    index: int | None,
    new: list[Equation],
    *,
    bindings: tuple[tuple[Key, Term], ...] = (),
    s_bv: tuple[tuple[Var, Var], ...] = (),
    delta1: frozenset[CtxVar] | None = None,
    delta2: frozenset[IntConstraint] | None = None,
    fresh: object = _KEEP,
    carrier_ctx: object = _KEEP,
    position: Position | None = None,
) -> UnifState:
    rest = state.pending if index is None else state.pending[:index] + state.pending[index + 1 :]
    pending = tuple(new) + rest
    if bindings:
        sigma = _subst_of(bindings)
        pending = tuple(_substitute_eq(sigma, eq) for eq in pending)
    new_position = position or state.position
    if new_position != "pending":
        pending = tuple(dataclasses.replace(eq, carrier=False) for eq in pending)
    result = dataclasses.replace(
        state,
        pending=pending,
        solved=state.solved + bindings,
        s_bv=state.s_bv + s_bv,
        delta1=state.delta1 if delta1 is None else delta1,
        delta2=state.delta2 if delta2 is None else delta2,
        fresh=state.fresh if fresh is _KEEP else fresh,
        carrier_ctx=state.carrier_ctx if carrier_ctx is _KEEP else carrier_ctx,
        position=new_position,
    )
    if state.tracing:
        before: Measure = measure(state)
        result = dataclasses.replace(
            result, trace=state.trace + (TraceStep(rule, before, measure(result)),)
        )
    return result


def _carried(state: UnifState, t: Term) -> bool:
    return state.carrier_ctx is not None and state.carrier_ctx in context_variables(t)


def _decided(state: UnifState, eq: Equation, how: Position) -> Position | None:
    """Position update when the carrier equation is consumed"""
    if eq.carrier and state.position == "pending":
        return how
    return None


# standard rules


def _trivial(state: UnifState, index: int) -> Outcome:
    return [_successor(state, "Trivial", index, [])]


def _fail(state: UnifState, index: int) -> Outcome:
    return FAIL


def _dec(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    assert isinstance(eq.left, Fn) and isinstance(eq.right, Fn)
    position = None
    if eq.carrier and state.carrier_ctx is None:
        position = _decided(state, eq, "critical")
    new = [
        Equation(a, b, eq.carrier and position is None and _carried(state, a))
        for a, b in zip(eq.left.args, eq.right.args)
    ]
    return [_successor(state, "Dec", index, new, position=position)]


def _solve(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    if isinstance(eq.left, Var) and _is_solvable_var(eq.left):
        key, image = eq.left, eq.right
    elif isinstance(eq.right, Var) and _is_solvable_var(eq.right):
        key, image = eq.right, eq.left
    else:
        raise InapplicableRuleError(f"Solve needs a variable side: {eq}")
    if key in variables(image):
        return FAIL
    position = _decided(state, eq, "variable") if image is eq.left else None
    return [_successor(state, "Solve", index, [], bindings=((key, image),), position=position)]


def _solve_bv(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    assert isinstance(eq.left, Var) and isinstance(eq.right, Var)
    return [_successor(state, "Solve", index, [], s_bv=((eq.left, eq.right),))]


# context rules


def _empty_c(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x = _head(eq.left)
    if x is None or x in state.delta1:
        x = _head(eq.right)
    if x is None or x in state.delta1:
        raise InapplicableRuleError(f"Empty-C needs a context variable outside Delta1: {eq}")
    non_empty = _successor(state, "Empty-C", None, [], delta1=state.delta1 | {x})
    empty = _successor(
        state,
        "Empty-C",
        None,
        [],
        bindings=((x, HOLE),),
        carrier_ctx=None if x == state.carrier_ctx else _KEEP,
    )
    return [non_empty, empty]


def _context_side(state: UnifState, eq: Equation) -> tuple[CtxVar, Term, Fn, bool]:
    """(X, s, t, on_left) for X(s) =. t"""
    if isinstance(eq.left, CtxApp) and isinstance(eq.right, Fn):
        return eq.left.var, eq.left.arg, eq.right, True
    if isinstance(eq.right, CtxApp) and isinstance(eq.left, Fn):
        return eq.right.var, eq.right.arg, eq.left, False
    raise InapplicableRuleError(f"Not a context equation: {eq}")


def _context_step(
    state: UnifState,
    rule: str,
    index: int,
    x: CtxVar,
    image: Term,
    into_p: Term,
    goal: Term,
    x_new: CtxVar,
    on_left: bool,
    fresh: object,
    out_of_p: Term,
) -> UnifState:
    """Record x -> image and continue with into_p =. goal.

    into_p is the part of the other side that stays in P; goal holds
    x's argument under the fresh variable x_new.
    """
    eq = state.pending[index]
    carrier_ctx: object = _KEEP
    position: Position | None = None
    if on_left:
        new = Equation(goal, into_p, eq.carrier)
        if x == state.carrier_ctx:
            carrier_ctx = x_new
    else:
        carried = eq.carrier and state.position == "pending"
        if carried and state.carrier_ctx is None:
            position = "critical"
        elif carried and _carried(state, out_of_p):
            position = "variable"
        new = Equation(into_p, goal, eq.carrier and position is None)
    return _successor(
        state,
        rule,
        index,
        [new],
        bindings=((x, image),),
        fresh=fresh,
        carrier_ctx=carrier_ctx,
        position=position,
    )


def _dec_ca(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, t, on_left = _context_side(state, eq)
    if t.symbol != "app":
        raise InapplicableRuleError(f"Dec-CA needs an application: {eq}")
    t1, t2 = t.args
    x1, fresh = state.fresh.ctx(x.cls)
    return [
        _context_step(state, "Dec-CA", index, x, app(x1(HOLE), t2), t1, x1(s), x1, on_left, fresh, t2)
    ]


def _dec_cc(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, t, on_left = _context_side(state, eq)
    if t.symbol not in ("app", "let") or x.cls == ContextClass.A:
        raise InapplicableRuleError(f"Dec-CC does not apply to {eq}")
    t1, t2 = t.args
    x1, fresh = state.fresh.ctx(x.cls)
    image = Fn(t.symbol, (t1, x1(HOLE)))
    return [_context_step(state, "Dec-CC", index, x, image, t2, x1(s), x1, on_left, fresh, t1)]


def _dec_cl(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, t, on_left = _context_side(state, eq)
    if t.symbol != "let" or x.cls == ContextClass.A:
        raise InapplicableRuleError(f"Dec-CL does not apply to {eq}")
    t1, t2 = t.args
    x1, fresh = state.fresh.ctx(x.cls)
    y, fresh = fresh.var(Sort.BV)
    z, fresh = fresh.var(Sort.ENV)
    image = let(env_star([bind(y, x1(HOLE))], z), t2)
    goal = env_star([bind(y, x1(s))], z)
    return [_context_step(state, "Dec-CL", index, x, image, t1, goal, x1, on_left, fresh, t2)]


def _dec_lam(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, t, on_left = _context_side(state, eq)
    if t.symbol != "lam" or x.cls != ContextClass.C:
        raise InapplicableRuleError(f"Dec-Lam does not apply to {eq}")
    t1, t2 = t.args
    x1, fresh = state.fresh.ctx(x.cls)
    return [_context_step(state, "Dec-Lam", index, x, lam(t1, x1(HOLE)), t2, x1(s), x1, on_left, fresh, t1)]


def _merge_sides(eq: Equation) -> tuple[CtxVar, Term, CtxVar, Term]:
    if isinstance(eq.left, CtxApp) and isinstance(eq.right, CtxApp):
        return eq.left.var, eq.left.arg, eq.right.var, eq.right.arg
    raise InapplicableRuleError(f"Merge needs context variables on both sides: {eq}")


def _merge_p(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, y, t = _merge_sides(eq)
    d = min(x.cls, y.cls)
    z, fresh = state.fresh.ctx(d)
    delta1 = state.delta1 | {z}
    results = []
    # x is a prefix of y
    y1, fresh1 = fresh.ctx(y.cls)
    results.append(
        _successor(
            state,
            "Merge-P",
            index,
            [Equation(s, y1(t), eq.carrier)],
            bindings=((x, z(HOLE)), (y, z(y1(HOLE)))),
            delta1=delta1,
            fresh=fresh1,
            carrier_ctx=None if x == state.carrier_ctx else _KEEP,
        )
    )
    # y is a prefix of x
    x1, fresh2 = fresh.ctx(x.cls)
    results.append(
        _successor(
            state,
            "Merge-P",
            index,
            [Equation(x1(s), t, eq.carrier)],
            bindings=((y, z(HOLE)), (x, z(x1(HOLE)))),
            delta1=delta1,
            fresh=fresh2,
            carrier_ctx=x1 if x == state.carrier_ctx else _KEEP,
        )
    )
    return results


def _fork(
    state: UnifState,
    rule: str,
    index: int,
    bindings: tuple[tuple[Key, Term], ...],
    fresh: object,
) -> UnifState:
    eq = state.pending[index]
    return _successor(
        state,
        rule,
        index,
        [],
        bindings=bindings,
        fresh=fresh,
        position=_decided(state, eq, "variable"),
    )


def _merge_fa(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, y, t = _merge_sides(eq)
    if (x.cls == ContextClass.A) == (y.cls == ContextClass.A):
        raise InapplicableRuleError(f"Merge-FA needs exactly one A context: {eq}")
    if y.cls == ContextClass.A:
        x, s, y, t = y, t, x, s
    z, fresh = state.fresh.ctx(ContextClass.A)
    x1, fresh = fresh.ctx(x.cls)
    y1, fresh = fresh.ctx(y.cls)
    bindings = (
        (x, z(app(x1(HOLE), y1(t)))),
        (y, z(app(x1(s), y1(HOLE)))),
    )
    return [_fork(state, "Merge-FA", index, bindings, fresh)]


def _merge_fc(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    x, s, y, t = _merge_sides(eq)
    if ContextClass.A in (x.cls, y.cls):
        raise InapplicableRuleError(f"Merge-FC needs two non-A contexts: {eq}")
    d = min(x.cls, y.cls)
    z, fresh = state.fresh.ctx(d)
    x1, fresh = fresh.ctx(x.cls)
    y1, fresh = fresh.ctx(y.cls)
    u, fresh = fresh.var(Sort.BV)
    v, fresh = fresh.var(Sort.BV)
    rest, fresh = fresh.var(Sort.ENV)
    body, fresh = fresh.var(Sort.EXP)
    splits = [
        # application, either side in function position
        (app(x1(HOLE), y1(t)), app(x1(s), y1(HOLE))),
        (app(y1(t), x1(HOLE)), app(y1(HOLE), x1(s))),
        # one in a binding, the other in the body
        (
            let(env_star([bind(u, x1(HOLE))], rest), y1(t)),
            let(env_star([bind(u, x1(s))], rest), y1(HOLE)),
        ),
        (
            let(env_star([bind(u, y1(t))], rest), x1(HOLE)),
            let(env_star([bind(u, y1(HOLE))], rest), x1(s)),
        ),
        # two different bindings
        (
            let(env_star([bind(u, x1(HOLE)), bind(v, y1(t))], rest), body),
            let(env_star([bind(u, x1(s)), bind(v, y1(HOLE))], rest), body),
        ),
    ]
    return [
        _fork(state, "Merge-FC", index, ((x, z(x_image)), (y, z(y_image))), fresh)
        for x_image, y_image in splits
    ]


# multiset rules


def _oriented(eq: Equation) -> tuple[EnvView, EnvView]:
    """Views of (chain-free side, other side)"""
    lview, rview = env_view(eq.left), env_view(eq.right)
    if lview.chains and not rview.chains:
        if eq.carrier:
            raise InapplicableRuleError(f"Chains on the carrier side: {eq}")
        return rview, lview
    if lview.chains and rview.chains:
        raise InapplicableRuleError(f"Chains on both sides: {eq}")
    return lview, rview


def _first_binding(view: EnvView) -> int:
    for i, c in enumerate(view.components):
        if isinstance(c, Fn):
            return i
    raise InapplicableRuleError("No binding to decompose")


def _without(view: EnvView, i: int, extra: tuple[Term, ...] = (), tail: Term | None = None) -> Term:
    components = view.components[:i] + view.components[i + 1 :] + extra
    return env_star(components, view.tail if tail is None else tail)


def _dec_e(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    lview, rview = _oriented(eq)
    i = _first_binding(lview)
    t1 = lview.components[i]
    carried = eq.carrier and _carried(state, t1)
    results = []
    for j, t2 in enumerate(rview.components):
        if not isinstance(t2, Fn):
            continue
        new = [
            Equation(t1, t2, carried),
            Equation(_without(lview, i), _without(rview, j), eq.carrier and not carried),
        ]
        results.append(_successor(state, "Dec-E", index, new))
    return results or FAIL


def _chain_bind(n: IntVar, m: IntVar) -> Term:
    return bind(chain_bv(n), chain_ctx(n)(var(chain_bv(m))))


def _dec_ch(state: UnifState, index: int) -> Outcome:
    eq = state.pending[index]
    lview, rview = _oriented(eq)
    i = _first_binding(lview)
    t1 = lview.components[i]
    carried = eq.carrier and _carried(state, t1)
    rest_left = _without(lview, i)
    results = []
    for j, chain in enumerate(rview.components):
        if not isinstance(chain, Chain):
            continue
        n1, n2 = chain.start, chain.end
        if lt(n1, n2) not in state.delta2:
            raise InapplicableRuleError(f"{chain} lacks {lt(n1, n2)}")
        base = state.delta2 - {lt(n1, n2)}
        n3, fresh3 = state.fresh.int_var()
        n4, fresh4 = fresh3.int_var()
        cases: list[tuple[Term, tuple[Term, ...], CtxVar, frozenset[IntConstraint], object]] = [
            (_chain_bind(n2, n1), (), chain_ctx(n2), frozenset({succ(n1, n2)}), state.fresh),
            (
                _chain_bind(n3, n1),
                (Chain(n3, n2),),
                chain_ctx(n3),
                frozenset({succ(n1, n3), lt(n3, n2)}),
                fresh3,
            ),
            (
                _chain_bind(n2, n3),
                (Chain(n1, n3),),
                chain_ctx(n2),
                frozenset({lt(n1, n3), succ(n3, n2)}),
                fresh3,
            ),
            (
                _chain_bind(n4, n3),
                (Chain(n1, n3), Chain(n4, n2)),
                chain_ctx(n4),
                frozenset({lt(n1, n3), succ(n3, n4), lt(n4, n2)}),
                fresh4,
            ),
        ]
        for element, remaining, a_new, relations, fresh in cases:
            delta2 = base | relations
            if constraints_satisfiable(delta2) is None:
                continue
            new = [
                Equation(t1, element, carried),
                Equation(rest_left, _without(rview, j, remaining), eq.carrier and not carried),
            ]
            results.append(
                _successor(
                    state,
                    "Dec-Ch",
                    index,
                    new,
                    delta1=state.delta1 | {a_new},
                    delta2=delta2,
                    fresh=fresh,
                )
            )
    return results or FAIL


def _solve_e(state: UnifState, index: int) -> Outcome:
    """Move the first binding of the chain-free side into the tail
    variable of the other side"""
    eq = state.pending[index]
    lview, rview = _oriented(eq)
    if not isinstance(rview.tail, Var):
        return FAIL
    i = _first_binding(lview)
    t1 = lview.components[i]
    tail, fresh = state.fresh.var(Sort.ENV)
    carried = eq.carrier and _carried(state, t1)
    new = Equation(
        _without(lview, i),
        env_star(rview.components, tail),
        eq.carrier and not carried,
    )
    return [
        _successor(
            state,
            "Solve-E",
            index,
            [new],
            bindings=((rview.tail, env_star([t1], tail)),),
            fresh=fresh,
            position=_decided(state, eq, "variable") if carried else None,
        )
    ]


RULES: dict[str, Callable[[UnifState, int], Outcome]] = {
    "Trivial": _trivial,
    "Fail": _fail,
    "Fail-Var": _fail,
    "Fail-Lam": _fail,
    "Fail-E": _fail,
    "Dec": _dec,
    "Solve": _solve,
    "Solve-BV": _solve_bv,
    "Empty-C": _empty_c,
    "Dec-CA": _dec_ca,
    "Dec-CC": _dec_cc,
    "Dec-CL": _dec_cl,
    "Dec-Lam": _dec_lam,
    "Merge-P": _merge_p,
    "Merge-FA": _merge_fa,
    "Merge-FC": _merge_fc,
    "Dec-E": _dec_e,
    "Dec-Ch": _dec_ch,
    "Solve-E": _solve_e,
}


@beartype
def apply_rule(state: UnifState, choice: RuleChoice) -> list[UnifState] | _Fail:
    """Apply one rule to one equation.

    Raises InapplicableRuleError when the rule does not match the
    equation; FAIL is returned for rules whose conclusion is Fail.
    """
    if not 0 <= choice.index < len(state.pending):
        raise InapplicableRuleError(f"No pending equation at {choice.index}")
    if choice.rule not in applicable_rules(state, choice.index):
        raise InapplicableRuleError(
            f"{choice.rule} does not apply to {state.pending[choice.index]}"
        )
    return RULES[choice.rule](state, choice.index)


def expand(state: UnifState) -> list[UnifState] | _Fail:
    """All successors of state through its selected equation"""
    index = select_equation(state)
    successors: list[UnifState] = []
    for rule in applicable_rules(state, index):
        outcome = RULES[rule](state, index)
        if isinstance(outcome, list):
            successors.extend(outcome)
    return successors or FAIL
