"""Concrete-syntax printing of expressions and meta-terms.

Meta-terms print context applications as X[e], chains as BCh(N1,N2),
Env variables as environment components and the hole as [.].
"""
from beartype import beartype

from calculus.encoding import UndecodableTermError
from calculus.syntax import Expr, print_surface
from term_core import (
    EMPTY_ENV,
    Chain,
    CtxApp,
    Fn,
    Hole,
    Sort,
    Term,
    Var,
    env_view,
    to_text,
)


def _is_binder(t: Term) -> bool:
    return isinstance(t, Var) and t.sort == Sort.BV


def _atom(t: Term) -> str:
    text = _print_term(t)
    if isinstance(t, Fn) and t.symbol in ("lam", "let"):
        return f"({text})"
    return text


def _component(c: Term) -> str:
    match c:
        case Fn("bind", (x, s)) if _is_binder(x):
            assert isinstance(x, Var)
            return f"{x.label} = {_print_term(s)}"
        case Chain():
            return str(c)
        case Var(sort=Sort.ENV):
            return c.label
    raise UndecodableTermError(f"Cannot print environment component {to_text(c)}")


def _print_term(t: Term) -> str:
    match t:
        case Fn("var", (x,)) if _is_binder(x):
            assert isinstance(x, Var)
            return x.label
        case Fn("app", (f, a)):
            return f"({_atom(f)} {_atom(a)})"
        case Fn("lam", (x, body)) if _is_binder(x):
            assert isinstance(x, Var)
            return f"\\{x.label}.{_print_term(body)}"
        case Fn("let", (environment, body)):
            view = env_view(environment)
            parts = [_component(c) for c in view.components]
            if view.tail != EMPTY_ENV:
                parts.append(_component(view.tail))
            return f"letrec {', '.join(parts)} in {_print_term(body)}"
        case CtxApp(x, arg):
            return f"{x.label}[{_print_term(arg)}]"
        case Var(sort=Sort.EXP):
            return t.label
        case Hole():
            return "[.]"
    raise UndecodableTermError(f"Cannot print {to_text(t)}")


@beartype
def print_expr(e: Expr | Term) -> str:
    if isinstance(e, (Var, CtxApp, Fn, Hole, Chain)):
        return _print_term(e)
    return print_surface(e)
