import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, construct_run_config, dump_config
from run import config, main

Validate = Callable[[Any, str], None]


@pytest.fixture(autouse=True)
def in_tmp_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    # log files are written relative to the working directory
    monkeypatch.chdir(tmp_path)


def run_json(argv: list[str], capsys: pytest.CaptureFixture[str]) -> tuple[Any, int]:
    code = main(argv)
    return json.loads(capsys.readouterr().out), code


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nothing"],
        ["overlaps", "--parallelism", "0"],
        ["diagrams", "--max-depth", "-1"],
        ["overlaps", "--step-budget", "0"],
        ["unify", "lbeta", "no-lbeta/1", "--transformation", "lapp"],
        ["diagrams", "lbeta", "--transformation", "lapp"],
        ["catalog", "--csv", "out.csv"],
        ["unify", "lbeta"],
        ["catalog", "--format", "yaml"],
    ],
)
def test_usage_errors(argv: list[str]) -> None:
    with pytest.raises(ValueError):
        config(argv)
    assert main(argv) == EXIT_USAGE


def test_construct_run_config() -> None:
    cfg = construct_run_config(config(["unify", "cp-e/abs", "no-cp-e-c/abs", "--trace"]))
    assert cfg.command == "unify"
    assert cfg.transformations == ("cp-e/abs",)
    assert cfg.no_rules == ("no-cp-e-c/abs",)
    assert cfg.trace
    assert cfg.result_dir is None

    cfg = construct_run_config(config(["diagrams", "llet-in", "--max-depth", "3"]))
    assert cfg.patterns("transformation") == ["llet-in"]
    assert cfg.patterns("no") is None
    assert cfg.max_depth == 3

    cfg = construct_run_config(config(["catalog", "--name", "lbeta", "--kind", "transformation"]))
    assert cfg.transformations == cfg.no_rules == ("lbeta",)
    assert cfg.kind == "transformation"


def test_dump_config(tmp_path: Path) -> None:
    args = config(["overlaps", "--result-dir", str(tmp_path / "results")])
    path = dump_config(args)
    assert path is not None
    assert json.loads(path.read_text())["command"] == "overlaps"
    assert dump_config(config(["overlaps"])) is None


def test_catalog(capsys: pytest.CaptureFixture[str], validate_output: Validate) -> None:
    document, code = run_json(["catalog"], capsys)
    assert code == EXIT_OK
    assert len(document) == 25
    validate_output(document, "catalog")

    document, _ = run_json(["catalog", "--kind", "no"], capsys)
    assert len(document) == 17
    document, _ = run_json(["catalog", "--name", "lbeta"], capsys)
    assert [e["name"] for e in document] == ["lbeta"]

    assert main(["catalog", "--format", "text", "--name", "no-lbeta"]) == EXIT_OK
    assert capsys.readouterr().out.count("[no]") == 4


def test_unify(capsys: pytest.CaptureFixture[str], validate_output: Validate) -> None:
    argv = ["unify", "lbeta", "no-lbeta/1", "--witness", "--trace", "--report-raw"]
    document, code = run_json(argv, capsys)
    assert code == EXIT_OK
    validate_output(document, "final_system")
    assert document["origin"] == ["lbeta", "no-lbeta/1"]
    assert document["raw"] >= len(document["finals"]) >= 1
    for final in document["finals"]:
        assert final["dvc"]["violated"] is not final["dvc_ok"]
        assert final["trace"]
        assert "witness" in final


def test_unify_unknown_rule(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["unify", "foo", "bar"]) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_unify_budget(capsys: pytest.CaptureFixture[str], validate_output: Validate) -> None:
    document, code = run_json(["unify", "cp-e/abs", "no-cp-e-c/abs", "--step-budget", "1"], capsys)
    assert code == EXIT_BUDGET
    validate_output(document, "final_system")
    assert document["finals"] == []
    assert document["diagnostics"]


def test_unify_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["unify", "lbeta", "no-lbeta/1", "--format", "text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("lbeta x no-lbeta/1: ")
    assert "# final 0" in out


def test_overlaps(
    tmp_path: Path, capsys: pytest.CaptureFixture[str], validate_output: Validate
) -> None:
    csv_path = tmp_path / "summary.csv"
    argv = ["overlaps", "--transformation", "lbeta", "--no-rule", "no-lbeta", "--report-raw"]
    document, code = run_json(argv + ["--csv", str(csv_path)], capsys)
    assert code == EXIT_OK
    validate_output(document, "overlaps")
    assert document["totals"]["problems"] == 4
    assert len(document["pairs"]) == 4
    assert len(document["records"]) == document["totals"]["dvc_ok"]
    assert csv_path.exists()
    totals = [row["total"] for row in document["reconciliation"]]
    assert totals == ["raw", "unique", "dvc_ok", "critical", "variable_position"]
    assert {row["target"] for row in document["reconciliation"]} == {1214}
    assert all(pair["reason"] for pair in document["pairs"])


def test_overlaps_budget(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["overlaps", "--transformation", "lbeta", "--no-rule", "no-lbeta/1"]
    document, code = run_json(argv + ["--step-budget", "1"], capsys)
    assert code == EXIT_BUDGET
    assert document["diagnostics"]


def test_diagrams(
    tmp_path: Path, capsys: pytest.CaptureFixture[str], validate_output: Validate
) -> None:
    output = tmp_path / "diagrams.json"
    argv = ["diagrams", "lbeta", "--no-rule", "no-lbeta/1", "--output", str(output)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    document = json.loads(output.read_text())
    validate_output(document, "diagrams")
    assert document["max_depth"] == 4

    assert main(argv[:4] + ["--format", "text"]) == EXIT_OK
    assert "closed: " in capsys.readouterr().out


@pytest.mark.slow
def test_overlaps_copy_rules(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["overlaps", "--transformation", "cp-e", "--parallelism", "2"]
    document, code = run_json(argv, capsys)
    assert code == EXIT_OK
    assert document["totals"]["problems"] == 34
