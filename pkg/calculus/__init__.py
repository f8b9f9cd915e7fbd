from .catalog import (
    NORMAL_ORDER_COUNT,
    TRANSFORMATION_COUNT,
    CatalogError,
    RuleEntry,
    UnknownRuleError,
    all_rules,
    catalog_json,
    find_rule,
    noreduction_lhs_set,
    rename_apart,
    render_catalog_text,
    rule_names_of,
    select_rules,
    transformation_lhs_set,
)
from .encoding import UndecodableTermError, decode, encode
from .printer import print_expr
from .syntax import (
    Abstraction,
    Application,
    DuplicateBinderError,
    Expr,
    ExprParsingError,
    Letrec,
    Variable,
    parse,
    print_surface,
)

__all__ = [
    "Expr",
    "Variable",
    "Application",
    "Abstraction",
    "Letrec",
    "parse",
    "print_surface",
    "print_expr",
    "encode",
    "decode",
    "RuleEntry",
    "transformation_lhs_set",
    "noreduction_lhs_set",
    "all_rules",
    "select_rules",
    "find_rule",
    "rename_apart",
    "rule_names_of",
    "catalog_json",
    "render_catalog_text",
    "TRANSFORMATION_COUNT",
    "NORMAL_ORDER_COUNT",
    "ExprParsingError",
    "DuplicateBinderError",
    "UndecodableTermError",
    "CatalogError",
    "UnknownRuleError",
]
