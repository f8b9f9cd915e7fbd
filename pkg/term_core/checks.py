"""Sort checking and the structural predicates used by the engine"""
from collections import Counter

from beartype import beartype

from term_core.errors import SortMismatchError
from term_core.signature import LNEED_SIGNATURE, Signature, Sort
from term_core.terms import (
    Chain,
    CtxApp,
    Fn,
    Hole,
    Term,
    Var,
    subterms,
)


class _IllSorted(Exception):
    pass


def _sort(t: Term, sig: Signature, allow_hole: bool) -> Sort:
    match t:
        case Var(sort=sort):
            return sort
        case Hole():
            if not allow_hole:
                raise _IllSorted("hole outside a context")
            return Sort.EXP
        case CtxApp(_, arg):
            if _sort(arg, sig, allow_hole) != Sort.EXP:
                raise _IllSorted("context argument must have sort Exp")
            return Sort.EXP
        case Chain():
            raise _IllSorted("BCh outside an env spine")
        case Fn("env", (component, rest)):
            # unknown symbols must surface even inside spines
            sig.decl("env")
            if not isinstance(component, Chain):
                s = _sort(component, sig, allow_hole)
                # an Env-sorted component is a splice of another environment
                if s not in (Sort.BIND, Sort.ENV):
                    raise _IllSorted("env component must be a binding")
            if _sort(rest, sig, allow_hole) != Sort.ENV:
                raise _IllSorted("env tail must have sort Env")
            return Sort.ENV
        case Fn(symbol, args):
            decl = sig.decl(symbol)
            if len(args) != decl.arity:
                raise _IllSorted(f"{symbol} expects {decl.arity} arguments")
            for arg, expected in zip(args, decl.arg_sorts):
                if _sort(arg, sig, allow_hole) != expected:
                    raise _IllSorted(f"argument of {symbol} must have sort {expected}")
            return decl.result
    raise _IllSorted(f"not a term: {t!r}")


@beartype
def well_sorted(
    t: Term, allow_hole: bool = False, sig: Signature = LNEED_SIGNATURE
) -> bool:
    """Check t against the signature.

    Unknown symbols raise UnknownSymbolError instead of returning False.
    """
    try:
        _sort(t, sig, allow_hole)
    except _IllSorted:
        return False
    return True


@beartype
def sort_of(t: Term, allow_hole: bool = True, sig: Signature = LNEED_SIGNATURE) -> Sort:
    try:
        return _sort(t, sig, allow_hole)
    except _IllSorted as e:
        raise SortMismatchError(f"Ill-sorted term {t}: {e}")


@beartype
def is_almost_ground(t: Term) -> bool:
    """Only BV variables remain; chains must be expanded beforehand"""
    for s in subterms(t):
        match s:
            case Var(sort=sort) if sort != Sort.BV:
                return False
            case CtxApp() | Chain():
                return False
    return True


@beartype
def is_almost_linear(t: Term) -> bool:
    """Every non-BV variable and context variable occurs at most once,
    and there is at most one chain"""
    counts: Counter[object] = Counter()
    chains = 0
    for s in subterms(t):
        match s:
            case Var(sort=sort) if sort != Sort.BV:
                counts[s] += 1
            case CtxApp(x, _):
                counts[x] += 1
            case Chain():
                chains += 1
    return chains <= 1 and all(n == 1 for n in counts.values())
