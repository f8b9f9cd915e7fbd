import json
from collections.abc import Callable
from typing import Any

import pytest

from calculus import *
from term_core import is_almost_linear, to_text, variables

TRANSFORMATION_NAMES = [
    "lbeta",
    "llet-in",
    "llet-e",
    "lapp",
    "cp-in/var",
    "cp-in/abs",
    "cp-e/var",
    "cp-e/abs",
]
NO_RULE_NAMES = [
    "no-lbeta/1",
    "no-lbeta/2",
    "no-lbeta/3",
    "no-lbeta/4",
    "no-lapp/1",
    "no-lapp/2",
    "no-lapp/3",
    "no-lapp/4",
    "no-cp-in/var",
    "no-cp-in/abs",
    "no-cp-e/var",
    "no-cp-e/abs",
    "no-cp-e-c/var",
    "no-cp-e-c/abs",
    "no-llet-in",
    "no-llet-e",
    "no-llet-e-c",
]


def test_catalog_sizes_and_names() -> None:
    transformations = transformation_lhs_set()
    no_rules = noreduction_lhs_set()
    assert len(transformations) == TRANSFORMATION_COUNT == 8
    assert len(no_rules) == NORMAL_ORDER_COUNT == 17
    assert [e.name for e in transformations] == TRANSFORMATION_NAMES
    assert [e.name for e in no_rules] == NO_RULE_NAMES
    assert all(e.kind == "transformation" for e in transformations)
    assert all(e.kind == "no" for e in no_rules)


@pytest.mark.parametrize("entry", all_rules(), ids=lambda e: e.name)
def test_entries_are_well_formed(entry: RuleEntry) -> None:
    assert is_almost_linear(entry.lhs)
    assert variables(entry.rhs) <= variables(entry.lhs)
    assert entry.family in {"lbeta", "lletin", "llete", "lapp", "cp"}


@pytest.mark.parametrize("entry", noreduction_lhs_set(), ids=lambda e: e.name)
def test_normal_order_rules_are_renamed_apart(entry: RuleEntry) -> None:
    for transformation in transformation_lhs_set():
        assert not rule_names_of(entry.lhs) & rule_names_of(transformation.lhs)
    assert "S" not in rule_names_of(entry.lhs)


def test_constraint_seeds() -> None:
    assert [str(x) for x in find_rule("no-cp-e/abs").delta1] == ["A2{A}"]
    assert [str(x) for x in find_rule("no-cp-e-c/var").delta1] == ["A_{N1}{A}"]
    assert [str(c) for c in find_rule("no-cp-e-c/var").delta2] == ["N1 < N2"]
    assert [str(c) for c in find_rule("no-lbeta/4").delta2] == ["N1 < N2"]
    assert not find_rule("cp-e/abs").delta1


def test_rename_apart() -> None:
    entry = find_rule("lbeta")
    renamed = rename_apart(entry, {"x", "s"})
    assert rule_names_of(renamed.lhs) == {"x'", "s'", "r"}
    assert to_text(renamed.lhs) == "app(lam(x':BV,s':Exp),r:Exp)"
    assert rename_apart(entry, {"q"}) is entry


def test_select_rules() -> None:
    names = lambda patterns, kind=None: [e.name for e in select_rules(patterns, kind)]
    assert names(["cp-e"]) == ["cp-e/var", "cp-e/abs"]
    assert names(["lbeta/_"]) == ["lbeta"]
    assert names(["no-lbeta"]) == ["no-lbeta/1", "no-lbeta/2", "no-lbeta/3", "no-lbeta/4"]
    assert len(names(["no-cp-*"])) == 6
    assert names(["llet-in", "no-llet-in"]) == ["llet-in", "no-llet-in"]
    assert len(names(None, "no")) == 17
    assert names(["nothing"]) == []


def test_find_rule() -> None:
    assert find_rule("cp-e/abs").name == "cp-e/abs"
    assert find_rule("no-llet-e", "no").name == "no-llet-e"
    with pytest.raises(UnknownRuleError):
        find_rule("foo")
    # ambiguous
    with pytest.raises(UnknownRuleError):
        find_rule("cp-e")
    with pytest.raises(UnknownRuleError):
        find_rule("lbeta", "no")


def test_catalog_json(validate_output: Callable[[Any, str], None]) -> None:
    document = json.loads(catalog_json())
    validate_output(document, "catalog")
    assert len(document) == 25
    assert len(json.loads(catalog_json("no"))) == 17
    lbeta = json.loads(catalog_json(patterns=["lbeta"]))
    assert lbeta == [
        {
            "name": "lbeta",
            "kind": "transformation",
            "lhs": "app(lam(x:BV,s:Exp),r:Exp)",
            "rhs": "let(env(bind(x:BV,r:Exp),emptyEnv),s:Exp)",
            "delta1": [],
            "delta2": [],
        }
    ]


def test_render_catalog_text() -> None:
    text = render_catalog_text("transformation")
    assert sum(1 for line in text.splitlines() if line.startswith("[transformation]")) == 8
    assert "[transformation] cp-e/abs" in text
    no_text = render_catalog_text("no", ["no-cp-e/abs"])
    assert "non-empty: A2{A}" in no_text
