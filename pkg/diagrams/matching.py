"""One-sided matching of rule left-hand sides against meta-terms.

The meta-term is rigid: its variables, context variables and chains are
constants. Pattern variables may be instantiated by subterms, pattern
context variables by context prefixes whose hole path fits their class,
and a pattern chain BCh(N1, N2) by a linked sequence of chain segments
and chain bindings of the meta-term.

Environments are matched modulo left-commutativity: every assignment of
pattern components to term components is tried.
"""
import dataclasses
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Literal

from beartype import beartype

from term_core import (
    EMPTY_ENV,
    HOLE,
    Chain,
    ContextClass,
    CtxApp,
    CtxVar,
    EnvView,
    Fn,
    IntVar,
    Sort,
    Term,
    Var,
    canonical,
    chain_bv,
    env_star,
    env_view,
    plug,
    step_class,
)
from term_core.errors import ContextClassError

Path = tuple[int, ...]


@dataclass(frozen=True)
class Match:
    """Bindings of pattern variables.

    Attributes:
        terms: first-order pattern variables to subterms.
        contexts: pattern context variables to contexts with one hole.
        ints: pattern integer variables to integer variables of the term.
        chains: pattern chains to the component sequences they cover.
    """

    terms: Mapping[Var, Term] = field(default_factory=dict)
    contexts: Mapping[CtxVar, Term] = field(default_factory=dict)
    ints: Mapping[IntVar, IntVar] = field(default_factory=dict)
    chains: Mapping[Chain, tuple[Term, ...]] = field(default_factory=dict)

    def with_term(self, x: Var, t: Term) -> "Match | None":
        if x in self.terms:
            return self if canonical(self.terms[x]) == canonical(t) else None
        return dataclasses.replace(self, terms={**self.terms, x: t})

    def with_context(self, x: CtxVar, c: Term) -> "Match | None":
        if x in self.contexts:
            return self if self.contexts[x] == c else None
        return dataclasses.replace(self, contexts={**self.contexts, x: c})

    def with_int(self, n: IntVar, m: IntVar) -> "Match | None":
        if n in self.ints:
            return self if self.ints[n] == m else None
        return dataclasses.replace(self, ints={**self.ints, n: m})

    def with_chain(self, c: Chain, covered: tuple[Term, ...]) -> "Match":
        return dataclasses.replace(self, chains={**self.chains, c: covered})


def is_exp(t: Term) -> bool:
    match t:
        case Var(sort=Sort.EXP) | CtxApp():
            return True
        case Fn("var" | "app" | "lam" | "let", _):
            return True
    return False


def _is_env(t: Term) -> bool:
    match t:
        case Var(sort=Sort.ENV) | Fn("env" | "emptyEnv", _):
            return True
    return False


def decompositions(t: Term, cls: ContextClass) -> Iterator[tuple[Term, Term]]:
    """All (context, subterm) with context[subterm] = t, the subterm an
    expression and the hole path admitted by cls. Rigid context variables
    on the path must themselves fit cls."""
    if is_exp(t):
        yield HOLE, t
    match t:
        case Fn(symbol, args):
            for i, a in enumerate(args):
                try:
                    step = step_class(symbol, i)
                except ContextClassError:
                    continue
                if step > cls:
                    continue
                for c, inner in decompositions(a, cls):
                    yield Fn(symbol, args[:i] + (c,) + args[i + 1 :]), inner
        case CtxApp(y, arg) if y.cls <= cls:
            for c, inner in decompositions(arg, cls):
                yield CtxApp(y, c), inner


def _chain_link(t: Term, start: IntVar) -> IntVar | None:
    """Index k if t is bind(y_k, A[var(y_start)]) with A a non-empty
    application context"""
    match t:
        case Fn("bind", (Var(index=IntVar() as k) as y, body)) if y.is_chain:
            target = Fn("var", (chain_bv(start),))
            for c, inner in decompositions(body, ContextClass.A):
                if c != HOLE and inner == target:
                    return k
    return None


def chain_paths(
    start: IntVar, components: tuple[Term, ...]
) -> Iterator[tuple[tuple[Term, ...], IntVar, tuple[Term, ...]]]:
    """(covered, end, rest) for every non-empty linked sequence leaving
    start"""
    for j, c in enumerate(components):
        rest = components[:j] + components[j + 1 :]
        end: IntVar | None = None
        if isinstance(c, Chain) and c.start == start:
            end = c.end
        elif isinstance(c, Fn):
            end = _chain_link(c, start)
        if end is None:
            continue
        yield (c,), end, rest
        for covered, last, remaining in chain_paths(end, rest):
            yield (c,) + covered, last, remaining


class _Matcher:
    def __init__(self, nonempty: frozenset[CtxVar]) -> None:
        self.nonempty = nonempty

    def match(self, p: Term, t: Term, m: Match) -> Iterator[Match]:
        match p:
            case Var(index=IntVar() as n) if p.is_chain:
                if isinstance(t, Var) and t.is_chain and isinstance(t.index, IntVar):
                    found = m.with_int(n, t.index)
                    if found is not None:
                        yield found
            case Var(sort=Sort.BV):
                if isinstance(t, Var) and t.sort == Sort.BV:
                    found = m.with_term(p, t)
                    if found is not None:
                        yield found
            case Var(sort=Sort.EXP):
                if is_exp(t):
                    found = m.with_term(p, t)
                    if found is not None:
                        yield found
            case Var(sort=Sort.ENV):
                if _is_env(t):
                    found = m.with_term(p, canonical(t))
                    if found is not None:
                        yield found
            case CtxApp(x, q):
                for c, inner in decompositions(t, x.cls):
                    if c == HOLE and x in self.nonempty:
                        continue
                    bound = m.with_context(x, c)
                    if bound is not None:
                        yield from self.match(q, inner, bound)
            case Fn("env" | "emptyEnv", _):
                if _is_env(t):
                    yield from self.match_env(env_view(p), _view(t), m)
            case Fn(symbol, args):
                if isinstance(t, Fn) and t.symbol == symbol and len(t.args) == len(args):
                    yield from self.match_args(args, t.args, m)

    def match_args(
        self, ps: tuple[Term, ...], ts: tuple[Term, ...], m: Match
    ) -> Iterator[Match]:
        if not ps:
            yield m
            return
        for found in self.match(ps[0], ts[0], m):
            yield from self.match_args(ps[1:], ts[1:], found)

    def match_env(self, pview: EnvView, tview: EnvView, m: Match) -> Iterator[Match]:
        pattern = [c for c in pview.components if isinstance(c, Fn)]
        pattern += [c for c in pview.components if isinstance(c, Chain)]
        yield from self._components(tuple(pattern), pview.tail, tview.components, tview.tail, m)

    def _components(
        self,
        pattern: tuple[Term, ...],
        ptail: Term,
        remaining: tuple[Term, ...],
        ttail: Term,
        m: Match,
    ) -> Iterator[Match]:
        if not pattern:
            if isinstance(ptail, Var):
                found = m.with_term(ptail, canonical(env_star(remaining, ttail)))
                if found is not None:
                    yield found
            elif not remaining and ttail == EMPTY_ENV:
                yield m
            return
        head, rest = pattern[0], pattern[1:]
        if isinstance(head, Chain):
            if head.start not in m.ints:
                return
            for covered, end, left in chain_paths(m.ints[head.start], remaining):
                bound = m.with_int(head.end, end)
                if bound is not None:
                    yield from self._components(
                        rest, ptail, left, ttail, bound.with_chain(head, covered)
                    )
            return
        for j, c in enumerate(remaining):
            if not isinstance(c, Fn):
                continue
            for found in self.match(head, c, m):
                yield from self._components(
                    rest, ptail, remaining[:j] + remaining[j + 1 :], ttail, found
                )


def _view(t: Term) -> EnvView:
    if isinstance(t, Var):
        return EnvView((), t)
    return env_view(t)


@beartype
def match_root(
    lhs: Term, t: Term, nonempty: frozenset[CtxVar] = frozenset()
) -> list[Match]:
    """Matches of lhs at the root of t; context variables in nonempty
    never match the hole"""
    return list(_Matcher(nonempty).match(lhs, t, Match()))


def surface_positions(t: Term, path: Path = ()) -> Iterator[tuple[Path, Term]]:
    """Expression positions of t not below a lambda; rigid context
    variables of class A or S are entered"""
    if is_exp(t):
        yield path, t
    match t:
        case Fn("lam", _) | Fn("var", _):
            return
        case Fn("bind", (_, body)):
            yield from surface_positions(body, path + (1,))
        case Fn(_, args):
            for i, a in enumerate(args):
                yield from surface_positions(a, path + (i,))
        case CtxApp(y, arg) if y.cls <= ContextClass.S:
            yield from surface_positions(arg, path + (0,))


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    i, rest = path[0], path[1:]
    match t:
        case Fn(symbol, args):
            return Fn(symbol, args[:i] + (replace_at(args[i], rest, new),) + args[i + 1 :])
        case CtxApp(y, arg):
            return CtxApp(y, replace_at(arg, rest, new))
    raise ValueError(f"No position {path} in {t}")


@beartype
def meta_match(
    lhs: Term,
    t: Term,
    nonempty: frozenset[CtxVar] = frozenset(),
    positions: Literal["root", "surface"] = "root",
) -> list[tuple[Match, Path]]:
    """All matches of lhs in t, at the root or at every surface position"""
    if positions == "root":
        return [(m, ()) for m in match_root(lhs, t, nonempty)]
    found = []
    for path, sub in surface_positions(t):
        found.extend((m, path) for m in match_root(lhs, sub, nonempty))
    return found


@beartype
def instantiate_rhs(rhs: Term, m: Match) -> Term:
    """Build the rule right-hand side from the bindings of a match"""
    match rhs:
        case Var(index=IntVar() as n) if rhs.is_chain:
            return chain_bv(m.ints[n])
        case Var():
            return m.terms[rhs]
        case CtxApp(x, q):
            return plug(m.contexts[x], instantiate_rhs(q, m))
        case Fn("emptyEnv", _):
            return rhs
        case Fn("env", _):
            view = env_view(rhs)
            components: list[Term] = []
            for c in view.components:
                match c:
                    case Chain():
                        components.extend(m.chains[c])
                    case _:
                        components.append(instantiate_rhs(c, m))
            return env_star(components, instantiate_rhs(view.tail, m))
        case Fn(symbol, args):
            return Fn(symbol, tuple(instantiate_rhs(a, m) for a in args))
    return rhs
