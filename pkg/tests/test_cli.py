import csv
import io
import json

import pytest

from tsvf_lab import tsvf
from tsvf_lab.cli import EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE, cmd_list, cmd_run, cmd_selftest, main
from tsvf_lab.report import CSV_FIELDS, RunConfig, build_report, render_json, run_catalog
from tsvf_lab.scenarios import scenario_names

FAST = 2000


def listed_names():
    return [line.split()[0] for line in cmd_list().splitlines()]


def test_list_contents_and_order():
    names = listed_names()
    assert "scenario_three_box" in names and "ghz_classical_bound" in names
    assert names == sorted(names) == scenario_names()


def test_every_listed_name_runs():
    for name in listed_names():
        out, err = io.StringIO(), io.StringIO()
        assert cmd_run(RunConfig([name], trials=FAST), out, err) == EXIT_OK, out.getvalue()


def test_sharp_shanks_json_report():
    out = io.StringIO()
    assert cmd_run(RunConfig(["scenario_sharp_shanks"], format="json"), out) == EXIT_OK
    report = json.loads(out.getvalue())
    assert set(report) == {"version", "config", "results"}
    (res,) = report["results"]
    for c in res["checks"]:
        assert {"description", "analytic", "estimate", "tolerance", "passed", "trials", "seed", "anchor"} <= set(c)
    target = [c for c in res["checks"]
              if c["description"] == "final-outcome decomposition equals Born probability cos^2(theta_ab/2)"]
    assert target and target[0]["passed"]


def test_json_reports_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["run", "--trials", "5000", "--seed", "9", "--format", "json", "--out", str(p)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_thread_count_does_not_change_report(monkeypatch):
    cfg = RunConfig(trials=FAST, seed=4)
    monkeypatch.setenv("TSVF_LAB_THREADS", "1")
    serial = render_json(build_report(cfg, run_catalog(cfg)))
    monkeypatch.setenv("TSVF_LAB_THREADS", "8")
    assert render_json(build_report(cfg, run_catalog(cfg))) == serial


def test_csv_one_row_per_check():
    out = io.StringIO()
    cmd_run(RunConfig(["scenario_three_box", "ghz_classical_bound"], trials=FAST, format="csv"), out)
    rows = list(csv.DictReader(io.StringIO(out.getvalue())))
    assert list(rows[0]) == CSV_FIELDS
    assert {r["scenario"] for r in rows} == {"scenario_three_box", "ghz_classical_bound"}


def test_text_report_six_decimals():
    out = io.StringIO()
    cmd_run(RunConfig(["scenario_xi_spin"], trials=FAST), out)
    assert "0.100000" in out.getvalue()
    assert out.getvalue().rstrip().endswith("1/1 scenarios passed")


def test_unknown_scenario(capsys):
    assert main(["run", "--scenario", "no_such_scenario"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "no_such_scenario" in err and "scenario_three_box" in err


def test_unwritable_output(tmp_path, capsys):
    bad = tmp_path / "missing" / "report.json"
    assert main(["run", "--scenario", "ghz_classical_bound", "--out", str(bad)]) == EXIT_IO
    assert "cannot write" in capsys.readouterr().err


def test_config_validation(capsys):
    with pytest.raises(ValueError):
        RunConfig(trials=10)
    with pytest.raises(ValueError):
        RunConfig(tolerance_sigma=0)
    assert main(["run", "--trials", "5"]) == EXIT_USAGE


def test_exit_status_reflects_failures():
    # at 0.01 sigma the Monte Carlo checks cannot all pass
    assert cmd_run(RunConfig(["scenario_xi_spin"], trials=FAST, tolerance_sigma=0.01), io.StringIO()) == EXIT_FAILED


@pytest.mark.parametrize("seed", [7, 42])
def test_selftest_passes(seed):
    out = io.StringIO()
    assert cmd_selftest(seed=seed, out=out) == EXIT_OK, out.getvalue()


def test_selftest_catches_wrong_denominator(monkeypatch):
    def broken(tsv, m):
        weights = abs(tsv_amps(tsv, m)) ** 2
        return {label: float(w) for label, w in zip(m.labels, weights)}  # forgot to normalize

    tsv_amps = tsvf.abl_amplitudes
    monkeypatch.setattr(tsvf, "abl_table", broken)
    out = io.StringIO()
    assert cmd_selftest(seed=42, out=out) == EXIT_FAILED
    assert "[FAIL]" in out.getvalue()


def test_main_list(capsys):
    assert main(["list"]) == EXIT_OK
    assert "scenario_ghz" in capsys.readouterr().out
