"""Termination measure of the unifier.

mu1 counts let occurrences in the pending equations. mu2 is a weighted
size: a context application weighs one more than its argument and an
env spine env*(L u r) weighs 7 per binding component, 1 per chain, plus
the weights of its components and its tail.
"""
from collections.abc import Iterable
from dataclasses import dataclass

from beartype import beartype

from term_core import Chain, CtxApp, Fn, Sort, Term, Var, env_view, subterms

BIND_WEIGHT = 7


@dataclass(frozen=True, order=True)
class Measure:
    mu1: int
    mu2: int

    def __str__(self) -> str:
        return f"({self.mu1}, {self.mu2})"


def _lets(t: Term) -> int:
    return sum(1 for s in subterms(t) if isinstance(s, Fn) and s.symbol == "let")


def _size(t: Term) -> int:
    match t:
        case Fn("env", _):
            view = env_view(t)
            total = _size(view.tail)
            for c in view.components:
                match c:
                    case Chain():
                        total += 1
                    case Var(sort=Sort.ENV):
                        total += _size(c)
                    case _:
                        total += BIND_WEIGHT + _size(c)
            return total
        case Fn(_, args):
            return 1 + sum(_size(a) for a in args)
        case CtxApp(_, arg):
            return 1 + _size(arg)
    return 1


@beartype
def term_measure(t: Term) -> Measure:
    return Measure(_lets(t), _size(t))


def sides_measure(sides: Iterable[Term]) -> Measure:
    mu1 = mu2 = 0
    for side in sides:
        mu1 += _lets(side)
        mu2 += _size(side)
    return Measure(mu1, mu2)
