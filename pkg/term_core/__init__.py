from .checks import is_almost_ground, is_almost_linear, sort_of, well_sorted
from .constraints import IntConstraint, lt, succ
from .errors import (
    ChainBoundsError,
    ContextClassError,
    NotAlmostGroundError,
    SortMismatchError,
    TermError,
    TermParsingError,
    UnknownSymbolError,
)
from .fresh import FreshNames
from .lc import EnvView, canonical, env_view, lc_equal
from .signature import (
    FREE_SYMBOLS,
    LNEED_SIGNATURE,
    ContextClass,
    Signature,
    Sort,
    SymbolDecl,
)
from .substitution import (
    IDENTITY,
    Substitution,
    apply_subst,
    context_class_of,
    expand_chain,
    hole_path_class,
    instantiate,
    plug,
    rename,
    step_class,
)
from .terms import (
    EMPTY_ENV,
    HOLE,
    Chain,
    CtxApp,
    CtxVar,
    Fn,
    Hole,
    IntVar,
    Term,
    Var,
    app,
    bind,
    bv,
    chain_bv,
    chain_ctx,
    context_variables,
    count_holes,
    ctx,
    env,
    env_star,
    env_var,
    exp_var,
    int_variables,
    lam,
    let,
    subterms,
    to_text,
    var,
    variables,
)
from .text import parse_term

__all__ = [
    "IntConstraint",
    "lt",
    "succ",
    "Sort",
    "ContextClass",
    "Signature",
    "SymbolDecl",
    "LNEED_SIGNATURE",
    "FREE_SYMBOLS",
    "Term",
    "Var",
    "IntVar",
    "CtxVar",
    "CtxApp",
    "Fn",
    "Hole",
    "Chain",
    "HOLE",
    "EMPTY_ENV",
    "app",
    "bind",
    "bv",
    "chain_bv",
    "chain_ctx",
    "ctx",
    "env",
    "env_star",
    "env_var",
    "exp_var",
    "lam",
    "let",
    "var",
    "subterms",
    "variables",
    "context_variables",
    "int_variables",
    "count_holes",
    "to_text",
    "parse_term",
    "well_sorted",
    "sort_of",
    "is_almost_ground",
    "is_almost_linear",
    "EnvView",
    "env_view",
    "canonical",
    "lc_equal",
    "Substitution",
    "IDENTITY",
    "apply_subst",
    "instantiate",
    "rename",
    "step_class",
    "plug",
    "hole_path_class",
    "context_class_of",
    "expand_chain",
    "FreshNames",
    "TermError",
    "UnknownSymbolError",
    "SortMismatchError",
    "ContextClassError",
    "ChainBoundsError",
    "NotAlmostGroundError",
    "TermParsingError",
]
