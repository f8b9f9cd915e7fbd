import json
from pathlib import Path

import pandas as pd
import pytest

from overlaps import *
from term_core import HOLE
from unifier import DEFAULT_STEP_BUDGET, FinalSystem


def test_solve_pair() -> None:
    pair = solve_pair(("lbeta", "no-lbeta/1", DEFAULT_STEP_BUDGET))
    assert pair.error is None
    assert not pair.budget_exhausted
    assert pair.raw >= len(pair.finals) >= 1
    assert pair.steps > 0
    assert all(f.origin == ("lbeta", "no-lbeta/1") for f in pair.finals)


def test_solve_pair_budget() -> None:
    pair = solve_pair(("cp-e/abs", "no-cp-e-c/abs", 1))
    assert pair.budget_exhausted
    assert pair.error is not None
    assert pair.finals == ()


def test_root_overlap_is_degenerate() -> None:
    run = run_overlaps(["lbeta"], ["no-lbeta/1"])
    assert run.totals()["problems"] == 1
    assert not run.budget_exhausted
    assert run.diagnostics == []
    root = [r for r in run.records if r.fork.surface == HOLE and r.fork.is_degenerate]
    assert root
    assert root[0].classification == "critical"
    assert root[0].to_json()["origin"] == ["lbeta", "no-lbeta/1"]


def test_copy_chain_fork(copy_chain_finals: list[FinalSystem]) -> None:
    critical = [f for f in copy_chain_finals if f.dvc_ok and not f.variable_position]
    assert critical
    for final in critical:
        fork = build_fork(final)
        assert fork.transformation == "cp-e/abs"
        assert fork.no_rule == "no-cp-e-c/abs"
        assert classify(final) == "critical"
        assert "cp-e/abs" in fork.render()
    assert any(build_fork(f).surface == HOLE for f in critical)
    assert "letrec" in witness(critical[0])


def test_build_fork_errors(copy_chain_finals: list[FinalSystem]) -> None:
    final = copy_chain_finals[0]
    with pytest.raises(ForkError):
        build_fork(FinalSystem(final.s_bv, final.s_other, final.delta1, final.delta2, True, ()))
    violating = [f for f in copy_chain_finals if not f.dvc_ok]
    for f in violating:
        with pytest.raises(ForkError):
            build_fork(f)
    with pytest.raises(ValueError):
        witness(FinalSystem((), (), frozenset(), frozenset(), True, ()))


def test_summary_tables(tmp_path: Path) -> None:
    run = run_overlaps(["lbeta"], ["no-lbeta"])
    df = summary_frame(run)
    assert list(df.columns) == SUMMARY_COLUMNS
    assert len(df) == 4
    assert list(df["no_rule"]) == ["no-lbeta/1", "no-lbeta/2", "no-lbeta/3", "no-lbeta/4"]
    assert (df["status"] == "ok").all()
    assert int(df["critical"].sum()) == run.totals()["critical"]
    assert int(df["unique"].sum()) == run.totals()["unique"]

    totals = totals_frame(run)
    assert list(totals.index) == ["lbeta"]
    assert int(totals.loc["lbeta", "dvc_ok"]) == run.totals()["dvc_ok"]

    path = tmp_path / "summary.csv"
    write_summary_csv(run, str(path))
    assert pd.read_csv(path).shape == (4, len(SUMMARY_COLUMNS))

    text = render_summary_text(run)
    assert "problems: 4" in text
    assert "deviation" in text


def test_reconciliation() -> None:
    run = run_overlaps(["lbeta"], ["no-lbeta"])
    totals = run.totals()
    df = reconciliation_frame(run)
    assert list(df.columns) == RECONCILIATION_COLUMNS
    assert list(df["total"]) == ["raw", "unique", "dvc_ok", "critical", "variable_position"]
    for row in df.itertuples():
        assert row.obtained == totals[row.total]
        assert row.deviation == row.obtained - OVERLAP_TARGET
        assert row.reason
    assert list(reconciliation_frame(run, target=0)["deviation"]) == list(df["obtained"])

    pairs = pair_reconciliation_frame(run)
    assert list(pairs["no_rule"]) == ["no-lbeta/1", "no-lbeta/2", "no-lbeta/3", "no-lbeta/4"]
    assert pairs["reason"].str.len().gt(0).all()
    exact = pairs[pairs["raw"] == pairs["critical"]]
    assert (exact["reason"] == "all raw finals are critical").all()


def test_parallel_run_matches_sequential() -> None:
    sequential = run_overlaps(["lbeta"], ["no-lbeta"])
    parallel = run_overlaps(["lbeta"], ["no-lbeta"], parallelism=2)
    assert parallel.totals() == sequential.totals()
    assert [r.fork for r in parallel.records] == [r.fork for r in sequential.records]


@pytest.mark.slow
def test_all_forking_problems() -> None:
    run = run_overlaps()
    totals = run.totals()
    assert totals["problems"] == 136
    assert run.diagnostics == []
    assert totals["raw"] >= totals["unique"] >= totals["dvc_ok"]
    assert totals["dvc_ok"] == totals["critical"] + totals["variable_position"]
    assert totals["critical"] > 0
    assert len(compute_overlaps(["lapp"], ["no-lapp/1"])) > 0


@pytest.mark.slow
def test_pinned_totals() -> None:
    run = run_overlaps()
    assert run.totals() == {
        "problems": 136,
        "raw": 1316,
        "unique": 1218,
        "dvc_ok": 1106,
        "critical": 330,
        "variable_position": 776,
    }
    frame = reconciliation_frame(run)
    deviations = dict(zip(frame["total"], frame["deviation"]))
    assert deviations["raw"] == 1316 - OVERLAP_TARGET
    assert deviations["unique"] == 4


@pytest.mark.slow
def test_parallel_output_is_identical() -> None:
    def document(parallelism: int) -> str:
        run = run_overlaps(parallelism=parallelism)
        payload = {
            "totals": run.totals(),
            "records": [r.to_json() for r in run.records],
            "diagnostics": run.diagnostics,
        }
        return json.dumps(payload, sort_keys=True)

    assert document(1) == document(8)
