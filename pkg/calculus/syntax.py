"""Concrete syntax of L_need.

    e ::= x | (e1 e2) | \\x.e | letrec x1 = e1, ..., xn = en in e

Abstraction bodies, binding right-hand sides and letrec bodies extend as
far to the right as possible; a parenthesized sequence of two or more
expressions is a left-nested application.
"""
from dataclasses import dataclass
from typing import Union

import pyparsing as pp
from beartype import beartype


class ExprParsingError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


class DuplicateBinderError(ExprParsingError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Application:
    fun: "Expr"
    arg: "Expr"


@dataclass(frozen=True)
class Abstraction:
    param: str
    body: "Expr"


@dataclass(frozen=True)
class Letrec:
    bindings: tuple[tuple[str, "Expr"], ...]
    body: "Expr"

    def __post_init__(self) -> None:
        if not self.bindings:
            raise ExprParsingError("letrec needs at least one binding")
        names = [name for name, _ in self.bindings]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise DuplicateBinderError(
                f"letrec binds {', '.join(duplicates)} more than once"
            )


Expr = Union[Variable, Application, Abstraction, Letrec]


def _fold_application(tokens: pp.ParseResults) -> "Expr":
    items = list(tokens)
    result = items[0]
    for arg in items[1:]:
        result = Application(result, arg)
    return result


def _build_grammar() -> pp.ParserElement:
    keyword = pp.Keyword("letrec") | pp.Keyword("in")
    ident = ~keyword + pp.Word(pp.alphas + "_", pp.alphanums + "_'")
    expr = pp.Forward()
    sequence = pp.OneOrMore(expr).set_parse_action(_fold_application)

    variable = ident.copy().set_parse_action(lambda t: Variable(t[0]))
    abstraction = (
        pp.Suppress("\\") + ident + pp.Suppress(".") + sequence
    ).set_parse_action(lambda t: Abstraction(t[0], t[1]))
    binding = pp.Group(ident + pp.Suppress("=") + sequence)
    letrec = (
        pp.Suppress(pp.Keyword("letrec"))
        + pp.Group(pp.delimited_list(binding))
        + pp.Suppress(pp.Keyword("in"))
        + sequence
    ).set_parse_action(
        lambda t: Letrec(tuple((b[0], b[1]) for b in t[0]), t[1])
    )
    parenthesized = pp.Suppress("(") + sequence + pp.Suppress(")")

    expr <<= letrec | abstraction | parenthesized | variable
    return expr


_GRAMMAR = _build_grammar()


@beartype
def parse(text: str) -> Expr:
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise ExprParsingError(
            f"Syntax error at line {e.lineno}, column {e.col}: {e.msg}"
        )
    expr = result[0]
    assert isinstance(expr, (Variable, Application, Abstraction, Letrec))
    return expr


def _atom(e: Expr) -> str:
    text = print_surface(e)
    if isinstance(e, (Abstraction, Letrec)):
        return f"({text})"
    return text


@beartype
def print_surface(e: Expr) -> str:
    match e:
        case Variable(name):
            return name
        case Application(fun, arg):
            return f"({_atom(fun)} {_atom(arg)})"
        case Abstraction(param, body):
            return f"\\{param}.{print_surface(body)}"
        case Letrec(bindings, body):
            env = ", ".join(f"{x} = {print_surface(s)}" for x, s in bindings)
            return f"letrec {env} in {print_surface(body)}"
    raise TypeError(f"Not an expression: {e!r}")
