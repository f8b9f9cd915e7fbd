from .closing import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_STATES,
    RENAMING,
    Diagram,
    Shape,
    Unclosed,
    classify_shape,
    close_fork,
    diagnose,
    without_bound_names,
)
from .matching import Match, instantiate_rhs, match_root, meta_match, surface_positions
from .render import edge_label, render_schema, render_set
from .rewriting import MetaStep, replays, rewrite_successors
from .schemas import (
    GENERIC,
    DiagramSchema,
    DiagramSet,
    compact_name,
    complete_set,
    family,
    fold_triangles,
    is_generic,
    schema_of,
    step_label,
)

__all__ = [
    "Match",
    "meta_match",
    "match_root",
    "instantiate_rhs",
    "surface_positions",
    "MetaStep",
    "rewrite_successors",
    "replays",
    "Diagram",
    "Unclosed",
    "Shape",
    "classify_shape",
    "close_fork",
    "diagnose",
    "without_bound_names",
    "RENAMING",
    "DEFAULT_MAX_DEPTH",
    "DEFAULT_MAX_STATES",
    "DiagramSchema",
    "DiagramSet",
    "GENERIC",
    "complete_set",
    "schema_of",
    "step_label",
    "family",
    "is_generic",
    "fold_triangles",
    "compact_name",
    "edge_label",
    "render_schema",
    "render_set",
]
