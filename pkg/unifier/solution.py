"""From solved parts to substitutions.

The solved part S of a final state is a list of (variable, image)
entries in the order they were solved. resolve orders them by
dependency and substitutes earlier images into later ones; BV
identifications are kept apart as classes with one representative.
"""
from collections.abc import Iterable, Mapping

import networkx as nx
from beartype import beartype

from term_core import (
    CtxVar,
    IntVar,
    Substitution,
    Term,
    Var,
    canonical,
    context_variables,
    instantiate,
    variables,
)
from unifier.errors import CyclicSolutionError
from unifier.problem import FinalSystem, Key, key_text


def _occurring_keys(t: Term) -> set[Key]:
    found: set[Key] = set(variables(t))
    found.update(context_variables(t))
    return found


def _as_substitution(images: Mapping[Key, Term]) -> Substitution:
    return Substitution(
        {k: t for k, t in images.items() if isinstance(k, Var)},
        {k: t for k, t in images.items() if isinstance(k, CtxVar)},
    )


@beartype
def resolve(solved: tuple[tuple[Key, Term], ...]) -> dict[Key, Term]:
    """Images of S with every solved variable substituted away.

    Raises CyclicSolutionError when S is not DAG-solved.
    """
    images = dict(solved)
    graph = nx.DiGraph()
    graph.add_nodes_from(images)
    for key, image in images.items():
        for other in _occurring_keys(image):
            if other in images:
                # other has to be resolved before key
                graph.add_edge(other, key)
    try:
        order = list(nx.lexicographical_topological_sort(graph, key=key_text))
    except nx.NetworkXUnfeasible as e:
        raise CyclicSolutionError("Solved part is not DAG-solved") from e
    resolved: dict[Key, Term] = {}
    for key in order:
        resolved[key] = instantiate(_as_substitution(resolved), images[key])
    return resolved


def _rep_rank(x: Var, t1_vars: set[Var]) -> tuple[int, int, str]:
    return (0 if x.is_chain else 1, 1 if x in t1_vars else 0, x.label)


@beartype
def bv_classes(
    pairs: Iterable[tuple[Var, Var]], t1_vars: set[Var]
) -> tuple[tuple[Var, Var], ...]:
    """Orient BV identifications towards one representative per class.

    Chain variables are preferred as representatives, then variables
    that do not occur in the left term t1, then the least label.
    """
    graph = nx.Graph()
    graph.add_edges_from(pairs)
    oriented: list[tuple[Var, Var]] = []
    for component in nx.connected_components(graph):
        rep = min(component, key=lambda x: _rep_rank(x, t1_vars))
        oriented.extend((x, rep) for x in component if x != rep)
    return tuple(sorted(oriented, key=lambda pair: (pair[0].label, pair[1].label)))


def _bv_substitution(final: FinalSystem, ints: Mapping[IntVar, int]) -> dict[Var, Var]:
    sigma = Substitution(ints=ints)
    bvmap: dict[Var, Var] = {}
    for x, rep in final.s_bv:
        x_image, rep_image = instantiate(sigma, x), instantiate(sigma, rep)
        assert isinstance(x_image, Var) and isinstance(rep_image, Var)
        bvmap[x_image] = rep_image
    return bvmap


@beartype
def symbolic_substitution(final: FinalSystem) -> Substitution:
    """The represented substitution with chains left unexpanded"""
    bvmap: dict[Var, Term] = dict(_bv_substitution(final, {}))
    rename_bv = Substitution(bvmap)
    images = {k: instantiate(rename_bv, t) for k, t in final.s_other}
    terms: dict[Var, Term] = {**bvmap}
    terms.update({k: t for k, t in images.items() if isinstance(k, Var)})
    contexts = {k: t for k, t in images.items() if isinstance(k, CtxVar)}
    return Substitution(terms, contexts)


def _instantiated_key(key: Key, ints: Mapping[IntVar, int]) -> Key:
    if isinstance(key, Var):
        found = instantiate(Substitution(ints=ints), key)
        assert isinstance(found, Var)
        return found
    if isinstance(key.index, IntVar) and key.index in ints:
        return CtxVar(key.name, key.cls, ints[key.index])
    return key


@beartype
def derive_solution(final: FinalSystem, int_model: Mapping[IntVar, int]) -> Substitution:
    """Ground the integer variables and expand every chain.

    Chain context images are instantiated first so that the bindings
    produced by chain expansion pick them up.
    """
    bvmap: dict[Var, Term] = dict(_bv_substitution(final, int_model))
    sigma0 = Substitution(bvmap, ints=int_model)
    chain_contexts: dict[CtxVar, Term] = {}
    for key, image in final.s_other:
        if isinstance(key, CtxVar) and key.is_chain:
            ground = _instantiated_key(key, int_model)
            assert isinstance(ground, CtxVar)
            chain_contexts[ground] = instantiate(sigma0, image)
    sigma1 = Substitution(bvmap, chain_contexts, int_model)
    terms: dict[Var, Term] = {**bvmap}
    contexts: dict[CtxVar, Term] = {**chain_contexts}
    for key, image in final.s_other:
        ground = _instantiated_key(key, int_model)
        if isinstance(ground, Var):
            terms[ground] = instantiate(sigma1, image)
        elif not key.is_chain:
            contexts[ground] = instantiate(sigma1, image)
    for key, image in [*terms.items(), *contexts.items()]:
        if key in _occurring_keys(image) and image != key:
            raise CyclicSolutionError(f"{key_text(key)} occurs in its own image")
    return Substitution(terms, contexts, int_model)


@beartype
def is_sound(final: FinalSystem, equations: Iterable[tuple[Term, Term]]) -> bool:
    """Both sides of every equation become LC-equal under the solution
    derived from the least integer model"""
    sigma = derive_solution(final, final.model)
    return all(
        canonical(instantiate(sigma, left)) == canonical(instantiate(sigma, right))
        for left, right in equations
    )
