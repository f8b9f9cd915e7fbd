"""Substitutions, hole filling, context classes and chain expansion"""
import dataclasses
from collections.abc import Mapping
from dataclasses import dataclass

from beartype import beartype

from term_core.checks import is_almost_ground, sort_of
from term_core.errors import (
    ChainBoundsError,
    ContextClassError,
    NotAlmostGroundError,
    SortMismatchError,
)
from term_core.signature import ContextClass, Sort
from term_core.terms import (
    Chain,
    CtxApp,
    CtxVar,
    Fn,
    Hole,
    IntVar,
    Term,
    Var,
    bind,
    chain_bv,
    chain_ctx,
    count_holes,
    var,
)


@dataclass(frozen=True)
class Substitution:
    """A finite map on first-order, context and integer variables.

    Attributes:
        terms: images of first-order variables (BV variables map to BV
            variables only).
        contexts: images of context variables; each image has one hole.
        ints: positive integer values of integer variables.
    """

    terms: Mapping[Var, Term] = dataclasses.field(default_factory=dict)
    contexts: Mapping[CtxVar, Term] = dataclasses.field(default_factory=dict)
    ints: Mapping[IntVar, int] = dataclasses.field(default_factory=dict)

    def validate(self) -> None:
        for x, image in self.terms.items():
            image_sort = sort_of(image)
            if image_sort != x.sort:
                raise SortMismatchError(
                    f"{x} cannot be mapped to a term of sort {image_sort}"
                )
            if x.sort == Sort.BV and not isinstance(image, Var):
                raise SortMismatchError(f"BV variable {x} mapped to {image}")
        for cv, image in self.contexts.items():
            if count_holes(image) != 1:
                raise ContextClassError(f"image of {cv} must contain one hole")
            found = hole_path_class(image)
            if found > cv.cls:
                raise ContextClassError(
                    f"{cv} has class {cv.cls} but its image has class {found}"
                )
        for n, value in self.ints.items():
            if value < 1:
                raise ChainBoundsError(f"{n} must be positive, got {value}")

    def is_empty(self) -> bool:
        return not (self.terms or self.contexts or self.ints)


IDENTITY = Substitution()


@beartype
def plug(context: Term, t: Term) -> Term:
    """Fill the hole of context with t"""
    match context:
        case Hole():
            return t
        case Fn(symbol, args):
            return Fn(symbol, tuple(plug(a, t) for a in args))
        case CtxApp(x, arg):
            return CtxApp(x, plug(arg, t))
    return context


def _instantiate_index(x: Var | CtxVar, ints: Mapping[IntVar, int]) -> Var | CtxVar:
    if isinstance(x.index, IntVar) and x.index in ints:
        return dataclasses.replace(x, index=ints[x.index])
    return x


def _apply(sigma: Substitution, t: Term) -> Term:
    match t:
        case Var():
            key = _instantiate_index(t, sigma.ints)
            assert isinstance(key, Var)
            return sigma.terms.get(key, key)
        case CtxApp(x, arg):
            inner = _apply(sigma, arg)
            cv = _instantiate_index(x, sigma.ints)
            assert isinstance(cv, CtxVar)
            image = sigma.contexts.get(cv)
            if image is None:
                return CtxApp(cv, inner)
            return plug(image, inner)
        case Fn("env", (Chain(start, end), rest)) if (
            start in sigma.ints and end in sigma.ints
        ):
            result = _apply(sigma, rest)
            for b in reversed(expand_chain(sigma.ints[start], sigma.ints[end])):
                result = Fn("env", (_apply(sigma, b), result))
            return result
        case Fn(symbol, args):
            return Fn(symbol, tuple(_apply(sigma, a) for a in args))
    return t


@beartype
def apply_subst(sigma: Substitution, t: Term) -> Term:
    """Simultaneous, capture-permitting replacement"""
    sigma.validate()
    return _apply(sigma, t)


def step_class(symbol: str, position: int) -> ContextClass:
    match (symbol, position):
        case ("app", 0):
            return ContextClass.A
        case ("app", 1) | ("let", _) | ("env", _) | ("bind", 1):
            return ContextClass.S
        case ("lam", 1):
            return ContextClass.C
    raise ContextClassError(f"hole below {symbol} at argument {position}")


def _class_to_hole(t: Term) -> ContextClass | None:
    match t:
        case Hole():
            return ContextClass.A
        case CtxApp(x, arg):
            inner = _class_to_hole(arg)
            return None if inner is None else max(inner, x.cls)
        case Fn(symbol, args):
            for i, a in enumerate(args):
                inner = _class_to_hole(a)
                if inner is not None:
                    return max(inner, step_class(symbol, i))
    return None


@beartype
def hole_path_class(context: Term) -> ContextClass:
    """Least class admitting the path from the root to the hole.

    Context variables on the path contribute their own class.
    """
    found = _class_to_hole(context)
    if found is None:
        raise ContextClassError(f"{context} has no hole")
    return found


@beartype
def context_class_of(context: Term) -> ContextClass:
    if not is_almost_ground(context):
        raise NotAlmostGroundError(f"{context} is not almost ground")
    return hole_path_class(context)


@beartype
def expand_chain(n1: int, n2: int) -> list[Term]:
    """bind(y_{i}, A_{i}(var(y_{i-1}))) for i = n1+1 .. n2"""
    if not 0 < n1 < n2:
        raise ChainBoundsError(f"chain bounds must satisfy 0 < n1 < n2, got ({n1}, {n2})")
    return [
        bind(chain_bv(i), chain_ctx(i)(var(chain_bv(i - 1))))
        for i in range(n1 + 1, n2 + 1)
    ]


def instantiate(sigma: Substitution, t: Term) -> Term:
    """apply_subst without validating sigma"""
    return _apply(sigma, t)


def _renamed_index(index: object, ints: Mapping[IntVar, IntVar]) -> object:
    if isinstance(index, IntVar):
        return ints.get(index, index)
    return index


@beartype
def rename(
    t: Term,
    terms: Mapping[Var, Var],
    contexts: Mapping[CtxVar, CtxVar],
    ints: Mapping[IntVar, IntVar],
) -> Term:
    """Rename variables, context variables and integer variables.

    Chain variables keep their family and follow the renaming of their
    index.
    """
    match t:
        case Var():
            if t in terms:
                return terms[t]
            if t.is_chain:
                return dataclasses.replace(t, index=_renamed_index(t.index, ints))
            return t
        case CtxApp(x, arg):
            if x in contexts:
                renamed = contexts[x]
            elif x.is_chain:
                renamed = dataclasses.replace(x, index=_renamed_index(x.index, ints))
            else:
                renamed = x
            return CtxApp(renamed, rename(arg, terms, contexts, ints))
        case Chain(start, end):
            return Chain(ints.get(start, start), ints.get(end, end))
        case Fn(symbol, args):
            return Fn(symbol, tuple(rename(a, terms, contexts, ints) for a in args))
    return t
