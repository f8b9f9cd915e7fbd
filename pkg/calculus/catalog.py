"""Rule catalogs: the transformations and the normal-order rules.

Each entry pairs an almost-linear left-hand side with its right-hand side
and the constraint seeds (non-empty context variables, integer relations)
that the unifier starts from. The copy rules are duplicated for a copied
variable and a copied abstraction; the lbeta and lapp normal-order rules
are duplicated for the four shapes of the reduction context around their
redex.
"""
import dataclasses
import fnmatch
import json
from dataclasses import dataclass
from functools import cache
from typing import Any, Literal

from beartype import beartype

from calculus.printer import print_expr
from term_core import (
    HOLE,
    Chain,
    ContextClass,
    CtxVar,
    IntConstraint,
    IntVar,
    Term,
    Var,
    app,
    bind,
    bv,
    chain_bv,
    chain_ctx,
    context_variables,
    ctx,
    env,
    env_star,
    env_var,
    exp_var,
    int_variables,
    is_almost_linear,
    lam,
    let,
    lt,
    to_text,
    var,
    variables,
)
from term_core.lc import canonical
from term_core.substitution import Substitution, apply_subst

Kind = Literal["transformation", "no"]

TRANSFORMATION_COUNT = 8
NORMAL_ORDER_COUNT = 17

# label family used when diagrams are aggregated into schemas
_FAMILY = {
    "lbeta": "lbeta",
    "llet-in": "lletin",
    "llet-e": "llete",
    "llet-e-c": "llete",
    "lapp": "lapp",
    "cp-in": "cp",
    "cp-e": "cp",
    "cp-e-c": "cp",
}


class CatalogError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


class UnknownRuleError(CatalogError):
    pass


@dataclass(frozen=True)
class RuleEntry:
    """One rule of a catalog.

    Attributes:
        name: stable rule name, e.g. "cp-e/abs" or "no-lbeta/3".
        kind: "transformation" or "no".
        lhs: almost-linear left-hand side.
        rhs: right-hand side over the variables of lhs.
        delta1: context variables required to be non-empty.
        delta2: integer relations between chain indices.
    """

    name: str
    kind: Kind
    lhs: Term
    rhs: Term
    delta1: frozenset[CtxVar] = frozenset()
    delta2: frozenset[IntConstraint] = frozenset()

    @property
    def base(self) -> str:
        """Rule name without the no- prefix and the instance suffix"""
        name = self.name.split("/")[0]
        return name.removeprefix("no-")

    @property
    def family(self) -> str:
        return _FAMILY[self.base]

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "lhs": to_text(self.lhs),
            "rhs": to_text(self.rhs),
            "delta1": sorted(str(x) for x in self.delta1),
            "delta2": sorted(str(c) for c in self.delta2),
        }


# meta-variables shared by the rule definitions
_x, _y, _z, _w, _v = bv("x"), bv("y"), bv("z"), bv("w"), bv("v")
_s, _t, _r = exp_var("s"), exp_var("t"), exp_var("r")
_Env, _Env1, _Env2 = env_var("Env"), env_var("Env1"), env_var("Env2")
_C = ctx("C", ContextClass.C)
_A, _A1, _A2 = (
    ctx("A", ContextClass.A),
    ctx("A1", ContextClass.A),
    ctx("A2", ContextClass.A),
)
_N1, _N2 = IntVar("N1"), IntVar("N2")

# copied value of the cp rules: a variable or an abstraction
_COPIED = {"var": var(_v), "abs": lam(_w, _t)}


def _transformations() -> list[RuleEntry]:
    entries = [
        RuleEntry(
            "lbeta",
            "transformation",
            app(lam(_x, _s), _r),
            let(env_star([bind(_x, _r)]), _s),
        ),
        RuleEntry(
            "llet-in",
            "transformation",
            let(_Env1, let(_Env2, _r)),
            let(env(_Env2, _Env1), _r),
        ),
        RuleEntry(
            "llet-e",
            "transformation",
            let(env_star([bind(_x, let(_Env2, _s))], _Env1), _r),
            let(env_star([bind(_x, _s), _Env2], _Env1), _r),
        ),
        RuleEntry(
            "lapp",
            "transformation",
            app(let(_Env, _t), _s),
            let(_Env, app(_t, _s)),
        ),
    ]
    for suffix, copied in _COPIED.items():
        entries.append(
            RuleEntry(
                f"cp-in/{suffix}",
                "transformation",
                let(env_star([bind(_x, copied)], _Env), _C(var(_x))),
                let(env_star([bind(_x, copied)], _Env), _C(copied)),
            )
        )
    for suffix, copied in _COPIED.items():
        entries.append(
            RuleEntry(
                f"cp-e/{suffix}",
                "transformation",
                let(env_star([bind(_x, copied), bind(_z, _C(var(_x)))], _Env), _r),
                let(env_star([bind(_x, copied), bind(_z, _C(copied))], _Env), _r),
            )
        )
    return entries


def _reduction_shapes(
    redex: Term, contractum: Term
) -> list[tuple[Term, Term, frozenset[IntConstraint]]]:
    """The four reduction-context shapes around a root redex"""
    y1, yn1, yn2 = _y, chain_bv(_N1), chain_bv(_N2)
    return [
        (_A(redex), _A(contractum), frozenset()),
        (let(_Env, _A(redex)), let(_Env, _A(contractum)), frozenset()),
        (
            let(env_star([bind(y1, _A1(redex))], _Env), _A(var(y1))),
            let(env_star([bind(y1, _A1(contractum))], _Env), _A(var(y1))),
            frozenset(),
        ),
        (
            let(env_star([bind(yn1, _A1(redex)), Chain(_N1, _N2)], _Env), _A(var(yn2))),
            let(
                env_star([bind(yn1, _A1(contractum)), Chain(_N1, _N2)], _Env),
                _A(var(yn2)),
            ),
            frozenset({lt(_N1, _N2)}),
        ),
    ]


def _normal_order_rules() -> list[RuleEntry]:
    entries: list[RuleEntry] = []
    lbeta = (app(lam(_x, _s), _r), let(env_star([bind(_x, _r)]), _s))
    lapp = (app(let(_Env1, _t), _s), let(_Env1, app(_t, _s)))
    for base, (redex, contractum) in (("lbeta", lbeta), ("lapp", lapp)):
        for k, (lhs, rhs, delta2) in enumerate(_reduction_shapes(redex, contractum), 1):
            entries.append(RuleEntry(f"no-{base}/{k}", "no", lhs, rhs, delta2=delta2))

    for suffix, copied in _COPIED.items():
        entries.append(
            RuleEntry(
                f"no-cp-in/{suffix}",
                "no",
                let(env_star([bind(_y, copied)], _Env), _A(var(_y))),
                let(env_star([bind(_y, copied)], _Env), _A(copied)),
            )
        )
    for suffix, copied in _COPIED.items():
        entries.append(
            RuleEntry(
                f"no-cp-e/{suffix}",
                "no",
                let(
                    env_star([bind(_x, copied), bind(_y, _A2(var(_x)))], _Env),
                    _A(var(_y)),
                ),
                let(
                    env_star([bind(_x, copied), bind(_y, _A2(copied))], _Env),
                    _A(var(_y)),
                ),
                delta1=frozenset({_A2}),
            )
        )
    an1 = chain_ctx(_N1)
    yn1, yn2 = chain_bv(_N1), chain_bv(_N2)
    for suffix, copied in _COPIED.items():
        entries.append(
            RuleEntry(
                f"no-cp-e-c/{suffix}",
                "no",
                let(
                    env_star(
                        [bind(_x, copied), bind(yn1, an1(var(_x))), Chain(_N1, _N2)],
                        _Env,
                    ),
                    _A(var(yn2)),
                ),
                let(
                    env_star(
                        [bind(_x, copied), bind(yn1, an1(copied)), Chain(_N1, _N2)],
                        _Env,
                    ),
                    _A(var(yn2)),
                ),
                delta1=frozenset({an1}),
                delta2=frozenset({lt(_N1, _N2)}),
            )
        )

    entries.append(
        RuleEntry(
            "no-llet-in",
            "no",
            let(_Env1, let(_Env2, _r)),
            let(env(_Env2, _Env1), _r),
        )
    )
    entries.append(
        RuleEntry(
            "no-llet-e",
            "no",
            let(env_star([bind(_y, let(_Env1, _r))], _Env2), _A(var(_y))),
            let(env_star([bind(_y, _r), _Env1], _Env2), _A(var(_y))),
        )
    )
    entries.append(
        RuleEntry(
            "no-llet-e-c",
            "no",
            let(
                env_star([bind(yn1, let(_Env1, _r)), Chain(_N1, _N2)], _Env2),
                _A(var(yn2)),
            ),
            let(
                env_star([bind(yn1, _r), _Env1, Chain(_N1, _N2)], _Env2),
                _A(var(yn2)),
            ),
            delta2=frozenset({lt(_N1, _N2)}),
        )
    )
    return entries


def rule_names_of(t: Term) -> set[str]:
    """Names of the plain (non-chain) variables and context variables"""
    names = {x.name for x in variables(t) if not x.is_chain}
    names.update(x.name for x in context_variables(t) if not x.is_chain)
    return names


def _primed(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


@beartype
def rename_apart(entry: RuleEntry, taken: set[str]) -> RuleEntry:
    """Prime every plain variable of entry whose name is in taken"""
    terms: dict[Var, Term] = {}
    contexts: dict[CtxVar, Term] = {}
    for x in variables(entry.lhs):
        if not x.is_chain and x.name in taken:
            terms[x] = dataclasses.replace(x, name=_primed(x.name, taken))
    for cv in context_variables(entry.lhs):
        if not cv.is_chain and cv.name in taken:
            renamed = dataclasses.replace(cv, name=_primed(cv.name, taken))
            contexts[cv] = renamed(HOLE)
    if not terms and not contexts:
        return entry
    sigma = Substitution(terms, contexts)
    delta1 = frozenset(
        dataclasses.replace(cv, name=_primed(cv.name, taken))
        if not cv.is_chain and cv.name in taken
        else cv
        for cv in entry.delta1
    )
    return dataclasses.replace(
        entry,
        lhs=apply_subst(sigma, entry.lhs),
        rhs=apply_subst(sigma, entry.rhs),
        delta1=delta1,
    )


def _check(entries: list[RuleEntry], expected: int, kind: str) -> None:
    if len(entries) != expected:
        raise CatalogError(f"{kind} catalog has {len(entries)} entries, expected {expected}")
    for entry in entries:
        if not is_almost_linear(entry.lhs):
            raise CatalogError(f"{entry.name}: left-hand side is not almost linear")
        if not variables(entry.rhs) <= variables(entry.lhs):
            raise CatalogError(f"{entry.name}: right-hand side introduces variables")
        if not context_variables(entry.rhs) <= context_variables(entry.lhs):
            raise CatalogError(f"{entry.name}: right-hand side introduces contexts")
        if not int_variables(entry.rhs) <= int_variables(entry.lhs):
            raise CatalogError(f"{entry.name}: right-hand side introduces indices")
        if canonical(entry.lhs) == canonical(entry.rhs):
            raise CatalogError(f"{entry.name}: rule does not rewrite")


@cache
def _catalogs() -> tuple[tuple[RuleEntry, ...], tuple[RuleEntry, ...]]:
    transformations = _transformations()
    _check(transformations, TRANSFORMATION_COUNT, "transformation")
    reserved = {"S"}
    for entry in transformations:
        reserved |= rule_names_of(entry.lhs)
    no_rules = [rename_apart(e, reserved) for e in _normal_order_rules()]
    _check(no_rules, NORMAL_ORDER_COUNT, "normal-order")
    return tuple(transformations), tuple(no_rules)


@beartype
def transformation_lhs_set() -> list[RuleEntry]:
    return list(_catalogs()[0])


@beartype
def noreduction_lhs_set() -> list[RuleEntry]:
    """Normal-order rules, renamed apart from every transformation"""
    return list(_catalogs()[1])


def all_rules() -> list[RuleEntry]:
    return transformation_lhs_set() + noreduction_lhs_set()


def _matches(pattern: str, name: str) -> bool:
    if pattern == name:
        return True
    parts = pattern.split("/")
    if "_" in parts:
        # a "_" segment stands for any instance suffix
        head = "/".join(p for p in parts if p != "_")
        return name == head or name.startswith(head + "/")
    if name.startswith(pattern + "/"):
        return True
    return fnmatch.fnmatchcase(name, pattern)


@beartype
def select_rules(patterns: list[str] | None = None, kind: Kind | None = None) -> list[RuleEntry]:
    """Catalog entries whose name matches any of patterns, in catalog order"""
    pool = all_rules()
    if kind is not None:
        pool = [e for e in pool if e.kind == kind]
    if not patterns:
        return pool
    return [e for e in pool if any(_matches(p, e.name) for p in patterns)]


@beartype
def find_rule(name: str, kind: Kind | None = None) -> RuleEntry:
    """The single rule selected by name, or UnknownRuleError"""
    found = select_rules([name], kind)
    if len(found) != 1:
        detail = "no rule" if not found else f"{len(found)} rules"
        raise UnknownRuleError(f"{name} selects {detail}")
    return found[0]


def catalog_json(kind: Kind | None = None, patterns: list[str] | None = None) -> str:
    return json.dumps([e.to_json() for e in select_rules(patterns, kind)], indent=2)


def render_catalog_text(kind: Kind | None = None, patterns: list[str] | None = None) -> str:
    lines = []
    for entry in select_rules(patterns, kind):
        lines.append(f"[{entry.kind}] {entry.name}")
        lines.append(f"  {print_expr(entry.lhs)}")
        lines.append(f"  -> {print_expr(entry.rhs)}")
        if entry.delta1:
            lines.append(f"  non-empty: {', '.join(sorted(str(x) for x in entry.delta1))}")
        if entry.delta2:
            lines.append(f"  indices: {', '.join(sorted(str(c) for c in entry.delta2))}")
    return "\n".join(lines)
