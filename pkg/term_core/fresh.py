"""Per-task fresh-name supply.

Every search task owns one supply; it is an immutable value threaded
through the search states, so names depend only on the branch taken and
never on scheduling.
"""
from dataclasses import dataclass

from term_core.signature import ContextClass, Sort
from term_core.terms import CtxVar, IntVar, Var

# prefixes of fresh families; catalogs never use these names
FRESH_PREFIX = {
    Sort.BV: "u",
    Sort.EXP: "e",
    Sort.ENV: "E",
    "ctx": "X",
    "int": "N",
}
# catalogs use N1 and N2 for their own integer variables
_START = {"int": 3}


@dataclass(frozen=True)
class FreshNames:
    counters: tuple[tuple[str, int], ...] = ()

    def _next(self, family: str) -> tuple[int, "FreshNames"]:
        table = dict(self.counters)
        k = table.get(family, _START.get(family, 1))
        table[family] = k + 1
        return k, FreshNames(tuple(sorted(table.items())))

    def var(self, sort: Sort) -> tuple[Var, "FreshNames"]:
        k, rest = self._next(sort.value)
        return Var(f"{FRESH_PREFIX[sort]}{k}", sort), rest

    def ctx(self, cls: ContextClass) -> tuple[CtxVar, "FreshNames"]:
        k, rest = self._next("ctx")
        return CtxVar(f"{FRESH_PREFIX['ctx']}{k}", cls), rest

    def int_var(self) -> tuple[IntVar, "FreshNames"]:
        k, rest = self._next("int")
        return IntVar(f"{FRESH_PREFIX['int']}{k}"), rest
