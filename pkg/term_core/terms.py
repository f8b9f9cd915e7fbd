"""Terms over the L_need signature.

A term is one of: a first-order variable, a context-variable application
X(t), a symbol application f(t1, ..., tn), the hole, or a binding chain
BCh(N1, N2) (only as an env spine component). Variables of the reserved
chain families y_i / A_i carry an index (an integer variable or, once a
model is applied, a positive integer) and never collide with plain names.
"""
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Union

from beartype import beartype

from term_core.signature import ContextClass, Sort

CHAIN_BV_FAMILY = "y"
CHAIN_CTX_FAMILY = "A"


@dataclass(frozen=True, order=True)
class IntVar:
    name: str

    def __str__(self) -> str:
        return self.name


Index = Union[IntVar, int, None]


def _label(name: str, index: Index) -> str:
    if index is None:
        return name
    return f"{name}_{{{index}}}"


@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort
    index: Index = None

    @property
    def label(self) -> str:
        return _label(self.name, self.index)

    @property
    def is_chain(self) -> bool:
        return self.index is not None

    def __str__(self) -> str:
        return f"{self.label}:{self.sort}"


@dataclass(frozen=True)
class CtxVar:
    name: str
    cls: ContextClass
    index: Index = None

    @property
    def label(self) -> str:
        return _label(self.name, self.index)

    @property
    def is_chain(self) -> bool:
        return self.index is not None

    def __call__(self, arg: "Term") -> "CtxApp":
        return CtxApp(self, arg)

    def __str__(self) -> str:
        return f"{self.label}{{{self.cls}}}"


@dataclass(frozen=True)
class CtxApp:
    var: CtxVar
    arg: "Term"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Fn:
    symbol: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Hole:
    def __str__(self) -> str:
        return "[]"


@dataclass(frozen=True)
class Chain:
    start: IntVar
    end: IntVar

    def __str__(self) -> str:
        return f"BCh({self.start},{self.end})"


Term = Union[Var, CtxApp, Fn, Hole, Chain]

HOLE = Hole()
EMPTY_ENV = Fn("emptyEnv")


# builders


def bv(name: str) -> Var:
    return Var(name, Sort.BV)


def exp_var(name: str) -> Var:
    return Var(name, Sort.EXP)


def env_var(name: str) -> Var:
    return Var(name, Sort.ENV)


def ctx(name: str, cls: ContextClass) -> CtxVar:
    return CtxVar(name, cls)


def chain_bv(index: IntVar | int) -> Var:
    return Var(CHAIN_BV_FAMILY, Sort.BV, index)


def chain_ctx(index: IntVar | int) -> CtxVar:
    return CtxVar(CHAIN_CTX_FAMILY, ContextClass.A, index)


def var(x: Var) -> Fn:
    return Fn("var", (x,))


def app(f: Term, a: Term) -> Fn:
    return Fn("app", (f, a))


def lam(x: Var, body: Term) -> Fn:
    return Fn("lam", (x, body))


def let(env: Term, body: Term) -> Fn:
    return Fn("let", (env, body))


def bind(x: Var, e: Term) -> Fn:
    return Fn("bind", (x, e))


def env(component: Term, rest: Term) -> Fn:
    return Fn("env", (component, rest))


def env_star(components: "list[Term] | tuple[Term, ...]", tail: Term = EMPTY_ENV) -> Term:
    """Right-nested env spine env*({c1, ..., cm} u tail)"""
    result = tail
    for component in reversed(tuple(components)):
        result = env(component, result)
    return result


# traversal


def is_env_term(t: Term) -> bool:
    match t:
        case Fn("env" | "emptyEnv", _):
            return True
        case Var(sort=Sort.ENV):
            return True
    return False


@beartype
def subterms(t: Term) -> Iterator[Term]:
    """Pre-order walk over t"""
    stack: list[Term] = [t]
    while stack:
        s = stack.pop()
        yield s
        match s:
            case Fn(_, args):
                stack.extend(reversed(args))
            case CtxApp(_, arg):
                stack.append(arg)


def variables(t: Term) -> set[Var]:
    return {s for s in subterms(t) if isinstance(s, Var)}


def context_variables(t: Term) -> set[CtxVar]:
    return {s.var for s in subterms(t) if isinstance(s, CtxApp)}


def int_variables(t: Term) -> set[IntVar]:
    found: set[IntVar] = set()
    for s in subterms(t):
        match s:
            case Chain(start, end):
                found.update((start, end))
            case Var(index=IntVar() as n):
                found.add(n)
            case CtxApp(CtxVar(index=IntVar() as n), _):
                found.add(n)
    return found


def count_holes(t: Term) -> int:
    return sum(1 for s in subterms(t) if isinstance(s, Hole))


def contains(t: Term, target: Term) -> bool:
    return any(s == target for s in subterms(t))


# canonical text grammar


def to_text(t: Term) -> str:
    match t:
        case Var() | Chain() | Hole():
            return str(t)
        case CtxApp(x, arg):
            return f"{x}({to_text(arg)})"
        case Fn(symbol, ()):
            return symbol
        case Fn(symbol, args):
            return f"{symbol}({','.join(to_text(a) for a in args)})"
    raise TypeError(f"Not a term: {t!r}")
