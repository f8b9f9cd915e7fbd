"""Satisfiability of chain-index constraints.

Constraints N < M and N+1 = M over positive integers are difference
constraints. The pointwise-least model is the longest-path distance from
a source that forces every variable to be at least 1; a positive cycle
means the constraints are unsatisfiable.
"""
from collections.abc import Iterable

import networkx as nx
from beartype import beartype

from term_core import IntConstraint, IntVar

_SOURCE = "__source__"


def _lower_bound(graph: nx.DiGraph, u: object, v: object, weight: int) -> None:
    # v >= u + weight; keep the strongest bound per edge
    if graph.has_edge(u, v):
        weight = max(weight, graph[u][v]["gain"])
    graph.add_edge(u, v, gain=weight, weight=-weight)


def difference_graph(
    delta2: Iterable[IntConstraint], extra: Iterable[IntVar] = ()
) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_node(_SOURCE)
    names: set[IntVar] = set(extra)
    for c in delta2:
        names.update((c.left, c.right))
        _lower_bound(graph, c.left, c.right, 1)
        if c.relation == "+1=":
            _lower_bound(graph, c.right, c.left, -1)
    for n in names:
        _lower_bound(graph, _SOURCE, n, 1)
    return graph


@beartype
def constraints_satisfiable(
    delta2: frozenset[IntConstraint] | set[IntConstraint],
    extra: frozenset[IntVar] | set[IntVar] = frozenset(),
) -> dict[IntVar, int] | None:
    """Least positive model of delta2 (over its variables and extra), or None"""
    graph = difference_graph(delta2, extra)
    try:
        distances = nx.single_source_bellman_ford_path_length(graph, _SOURCE)
    except nx.NetworkXUnbounded:
        return None
    return {n: -d for n, d in distances.items() if isinstance(n, IntVar)}


@beartype
def holds(delta2: frozenset[IntConstraint], model: dict[IntVar, int]) -> bool:
    for c in delta2:
        left, right = model[c.left], model[c.right]
        if c.relation == "<" and not left < right:
            return False
        if c.relation == "+1=" and left + 1 != right:
            return False
    return all(v >= 1 for v in model.values())
