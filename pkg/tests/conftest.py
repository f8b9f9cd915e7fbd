import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import jsonschema
import pytest

from overlaps import problem_for
from unifier import FinalSystem, UnifProblem, solve

ROOT = Path(__file__).parent.parent
SCHEMA_DIR = ROOT / "schemas"
GOLDEN_DIR = Path(__file__).parent / "golden"

COPY_CHAIN_PAIR = ("cp-e/abs", "no-cp-e-c/abs")


@pytest.fixture(scope="session")
def copy_chain_problem() -> UnifProblem:
    return problem_for(*COPY_CHAIN_PAIR)


@pytest.fixture(scope="session")
def copy_chain_finals(copy_chain_problem: UnifProblem) -> list[FinalSystem]:
    """Final systems of the copy overlap worked through by hand in the
    golden file; computed once per session"""
    return solve(copy_chain_problem)


@pytest.fixture(scope="session")
def golden() -> Callable[[str], Any]:
    def load(name: str) -> Any:
        with open(GOLDEN_DIR / name) as f:
            return json.load(f)

    return load


@pytest.fixture(scope="session")
def validate_output() -> Callable[[Any, str], None]:
    """Validate a JSON document against one of the published schemas"""

    def validate(document: Any, schema_name: str) -> None:
        with open(SCHEMA_DIR / f"{schema_name}.schema.json") as f:
            schema = json.load(f)
        jsonschema.validate(instance=document, schema=schema)

    return validate
