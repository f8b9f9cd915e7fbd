"""The left-commutative theory of environments.

env(x, env(y, z)) = env(y, env(x, z)) makes an env spine a multiset of
components above a tail. Canonical forms store every spine right-nested
with its components sorted by their text serialization, so LC-equality
is plain equality of canonical forms.
"""
from dataclasses import dataclass

from beartype import beartype

from term_core.checks import sort_of
from term_core.errors import SortMismatchError
from term_core.signature import Sort
from term_core.terms import (
    EMPTY_ENV,
    Chain,
    CtxApp,
    Fn,
    Term,
    Var,
    env_star,
    to_text,
)


@dataclass(frozen=True)
class EnvView:
    """A flattened env spine.

    Attributes:
        components: bindings, chains and (at the meta level) spliced
            Env variables, in spine order.
        tail: emptyEnv or an Env-sorted variable.
    """

    components: tuple[Term, ...]
    tail: Term

    @property
    def bindings(self) -> tuple[Term, ...]:
        return tuple(c for c in self.components if isinstance(c, Fn))

    @property
    def chains(self) -> tuple[Chain, ...]:
        return tuple(c for c in self.components if isinstance(c, Chain))

    @property
    def splices(self) -> tuple[Var, ...]:
        return tuple(c for c in self.components if isinstance(c, Var))

    @property
    def is_bare(self) -> bool:
        """No components: the spine is just its tail"""
        return not self.components

    def reconstruct(self) -> Term:
        return env_star(self.components, self.tail)


def _flatten(t: Term, components: list[Term], tails: list[Term]) -> None:
    while True:
        match t:
            case Fn("env", (component, rest)):
                if isinstance(component, (Fn, Var)) and _is_env_sorted(component):
                    _flatten(component, components, tails)
                else:
                    components.append(component)
                t = rest
            case _:
                tails.append(t)
                return


def _is_env_sorted(t: Term) -> bool:
    match t:
        case Var(sort=Sort.ENV) | Fn("env" | "emptyEnv", _):
            return True
    return False


@beartype
def env_view(t: Term) -> EnvView:
    """Flatten an env spine into (components, tail).

    Nested spines in component position are spliced in; their variable
    tails become splice components. The outer tail is kept as the tail.
    """
    components: list[Term] = []
    tails: list[Term] = []
    _flatten(t, components, tails)
    outer = tails[-1]
    for inner in tails[:-1]:
        if isinstance(inner, Var):
            components.append(inner)
    return EnvView(tuple(components), outer)


@beartype
def canonical(t: Term) -> Term:
    match t:
        case Fn("env" | "emptyEnv", _):
            view = env_view(t)
            components = [canonical(c) for c in view.components]
            env_vars = [c for c in components if isinstance(c, Var)]
            if isinstance(view.tail, Var):
                env_vars.append(view.tail)
            others = [c for c in components if not isinstance(c, Var)]
            tail: Term = EMPTY_ENV
            if env_vars:
                env_vars.sort(key=to_text)
                tail = env_vars.pop(0)
            ordered = sorted(others + env_vars, key=to_text)
            return env_star(ordered, tail)
        case Fn(symbol, args):
            return Fn(symbol, tuple(canonical(a) for a in args))
        case CtxApp(x, arg):
            return CtxApp(x, canonical(arg))
    return t


@beartype
def lc_equal(t1: Term, t2: Term) -> bool:
    s1, s2 = sort_of(t1), sort_of(t2)
    if s1 != s2:
        raise SortMismatchError(f"Cannot compare {s1} with {s2}")
    return canonical(t1) == canonical(t2)
