"""Parser for the canonical text grammar written by to_text.

    x:BV  y_{N1}:BV  X{C}(t)  A_{N3}{A}(t)  BCh(N1,N2)  []  f(a,...)  emptyEnv
"""
import pyparsing as pp
from beartype import beartype

from term_core.errors import TermParsingError
from term_core.signature import ContextClass, Sort
from term_core.terms import (
    HOLE,
    Chain,
    CtxApp,
    CtxVar,
    Fn,
    Hole,
    Index,
    IntVar,
    Term,
    Var,
)


def _index(token: str) -> IntVar | int:
    return int(token) if token.isdigit() else IntVar(token)


def _label(tokens: pp.ParseResults) -> tuple[str, Index]:
    parts = list(tokens)
    if len(parts) == 1:
        return parts[0], None
    return parts[0], _index(parts[1])


def _build_var(tokens: pp.ParseResults) -> Var:
    name, index = _label(tokens[0])
    return Var(name, Sort(tokens[1]), index)


def _build_ctx(tokens: pp.ParseResults) -> CtxApp:
    name, index = _label(tokens[0])
    return CtxApp(CtxVar(name, ContextClass[tokens[1]], index), tokens[2])


def _build_chain(tokens: pp.ParseResults) -> Chain:
    return Chain(IntVar(tokens[0]), IntVar(tokens[1]))


def _build_fn(tokens: pp.ParseResults) -> Fn:
    return Fn(tokens[0], tuple(tokens[1]))


def _build_grammar() -> pp.ParserElement:
    term = pp.Forward()
    ident = pp.Word(pp.alphas, pp.alphanums + "'")
    index = pp.Word(pp.alphanums)
    label = pp.Group(ident + pp.Opt(pp.Suppress("_{") + index + pp.Suppress("}")))
    sort = pp.one_of([s.value for s in Sort])
    cls = pp.one_of([c.name for c in ContextClass])
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")

    hole = pp.Literal("[]").set_parse_action(lambda: HOLE)
    chain = (
        pp.Suppress(pp.Keyword("BCh")) + lpar + index + pp.Suppress(",") + index + rpar
    ).set_parse_action(_build_chain)
    ctx_app = (
        label + pp.Suppress("{") + cls + pp.Suppress("}") + lpar + term + rpar
    ).set_parse_action(_build_ctx)
    variable = (label + pp.Suppress(":") + sort).set_parse_action(_build_var)
    fn_app = (
        ident + lpar + pp.Group(pp.delimited_list(term)) + rpar
    ).set_parse_action(_build_fn)
    constant = ident.copy().set_parse_action(lambda t: Fn(t[0]))

    term <<= hole | chain | ctx_app | variable | fn_app | constant
    return term


_GRAMMAR = _build_grammar()


@beartype
def parse_term(text: str) -> Term:
    try:
        result = _GRAMMAR.parse_string(text.strip(), parse_all=True)
    except pp.ParseException as e:
        raise TermParsingError(f"Cannot parse term at column {e.col}: {e.msg}")
    term = result[0]
    assert isinstance(term, (Var, CtxApp, Fn, Chain, Hole))
    return term
