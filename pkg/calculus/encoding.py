"""Translation between surface expressions and terms"""
from beartype import beartype

from calculus.syntax import Abstraction, Application, Expr, Letrec, Variable
from term_core import (
    EMPTY_ENV,
    Fn,
    Sort,
    Term,
    Var,
    app,
    bind,
    bv,
    env_star,
    env_view,
    lam,
    let,
    to_text,
    var,
)


class UndecodableTermError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


@beartype
def encode(e: Expr) -> Term:
    match e:
        case Variable(name):
            return var(bv(name))
        case Application(fun, arg):
            return app(encode(fun), encode(arg))
        case Abstraction(param, body):
            return lam(bv(param), encode(body))
        case Letrec(bindings, body):
            components = [bind(bv(x), encode(s)) for x, s in bindings]
            return let(env_star(components), encode(body))
    raise TypeError(f"Not an expression: {e!r}")


def _binder(t: Term) -> str:
    if isinstance(t, Var) and t.sort == Sort.BV:
        return t.label
    raise UndecodableTermError(f"Expected a bound variable, found {to_text(t)}")


@beartype
def decode(t: Term) -> Expr:
    """Inverse of encode on almost-ground expression terms"""
    match t:
        case Fn("var", (x,)):
            return Variable(_binder(x))
        case Fn("app", (f, a)):
            return Application(decode(f), decode(a))
        case Fn("lam", (x, body)):
            return Abstraction(_binder(x), decode(body))
        case Fn("let", (environment, body)):
            view = env_view(environment)
            if view.tail != EMPTY_ENV:
                raise UndecodableTermError(
                    f"Environment with open tail {to_text(view.tail)}"
                )
            bindings = []
            for component in view.components:
                match component:
                    case Fn("bind", (x, s)):
                        bindings.append((_binder(x), decode(s)))
                    case _:
                        raise UndecodableTermError(
                            f"Cannot decode environment component {to_text(component)}"
                        )
            return Letrec(tuple(bindings), decode(body))
    raise UndecodableTermError(f"Cannot decode {to_text(t)}")
