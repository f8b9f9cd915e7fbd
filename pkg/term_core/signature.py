"""Sorts, context classes and the many-sorted signature of L_need."""
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum, IntEnum

from beartype import beartype

from term_core.errors import UnknownSymbolError


class Sort(str, Enum):
    ENV = "Env"
    BIND = "Bind"
    EXP = "Exp"
    BV = "BV"

    def __str__(self) -> str:
        return self.value


class ContextClass(IntEnum):
    """Context classes ordered A < S < C"""

    A = 1
    S = 2
    C = 3

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    arg_sorts: tuple[Sort, ...]
    result: Sort
    theory: bool = False

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


@dataclass(frozen=True)
class Signature:
    """A signature split into a theory part and a free part.

    Attributes:
        theory_sorts: sorts whose terms are built by theory symbols.
        free_sorts: sorts whose terms are built by free symbols.
        symbols: declaration of every symbol by name.
    """

    theory_sorts: frozenset[Sort]
    free_sorts: frozenset[Sort]
    symbols: Mapping[str, SymbolDecl]

    def __post_init__(self) -> None:
        if self.theory_sorts & self.free_sorts:
            raise ValueError("theory and free sorts must be disjoint")
        for decl in self.symbols.values():
            expected = self.theory_sorts if decl.theory else self.free_sorts
            if decl.result not in expected:
                raise ValueError(
                    f"Symbol {decl.name} has result sort {decl.result} "
                    f"outside its part of the signature"
                )

    @property
    def sorts(self) -> frozenset[Sort]:
        return self.theory_sorts | self.free_sorts

    @beartype
    def decl(self, name: str) -> SymbolDecl:
        try:
            return self.symbols[name]
        except KeyError:
            raise UnknownSymbolError(f"Unknown symbol {name}")

    @beartype
    def is_empty_sort(self, sort: Sort) -> bool:
        """A sort is empty when no symbol produces it"""
        return all(d.result != sort for d in self.symbols.values())


_DECLS = (
    SymbolDecl("emptyEnv", (), Sort.ENV, theory=True),
    SymbolDecl("env", (Sort.BIND, Sort.ENV), Sort.ENV, theory=True),
    SymbolDecl("let", (Sort.ENV, Sort.EXP), Sort.EXP),
    SymbolDecl("app", (Sort.EXP, Sort.EXP), Sort.EXP),
    SymbolDecl("lam", (Sort.BV, Sort.EXP), Sort.EXP),
    SymbolDecl("bind", (Sort.BV, Sort.EXP), Sort.BIND),
    SymbolDecl("var", (Sort.BV,), Sort.EXP),
)

LNEED_SIGNATURE = Signature(
    theory_sorts=frozenset({Sort.ENV}),
    free_sorts=frozenset({Sort.BIND, Sort.EXP, Sort.BV}),
    symbols={d.name: d for d in _DECLS},
)

# free symbols that the unifier decomposes syntactically
FREE_SYMBOLS = tuple(d.name for d in _DECLS if not d.theory)
