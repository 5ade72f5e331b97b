import json

import pytest

from treemax.cli import cli_dispatch


@pytest.fixture
def ball_csv(tmp_path):
    path = tmp_path / "ball.csv"
    path.write_text("norm,value\n0,1\n1,1\n", encoding="utf-8")
    return path


def test_norm_command(ball_csv, capsys):
    assert cli_dispatch(["norm", "--radial", str(ball_csv), "--p", "2", "--s", "1"]) == 0
    assert capsys.readouterr().out.strip().startswith("4.0000000000000")


def test_norm_surrogate_divergence_exit_codes(ball_csv, capsys):
    argv = ["norm", "--radial", str(ball_csv), "--tail", "-1/2", "--p", "2", "--s", "1",
            "--kind", "surrogate"]
    assert cli_dispatch(argv) == 4
    assert cli_dispatch(["--expect-divergence"] + argv) == 0


def test_parameter_and_usage_errors(ball_csv, capsys):
    assert cli_dispatch(["norm", "--radial", str(ball_csv), "--p", "1/2"]) == 2
    assert cli_dispatch(["no-such-command"]) == 2
    assert cli_dispatch(["region", "--gamma", "0.5", "--grid", "1000"]) == 2


def test_budget_exit_code(ball_csv, capsys):
    finite = ball_csv.parent / "f.csv"
    finite.write_text("path,value\n,1\n", encoding="utf-8")
    assert cli_dispatch(["maximal", "--finite", str(finite), "--gamma", "0.5", "--R", "30"]) == 3


def test_maximal_radial(ball_csv, capsys):
    assert cli_dispatch(["maximal", "--radial", str(ball_csv), "--gamma", "1/2", "--m-max", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1].split(",")[1].startswith("2.0000000000000")


def test_region_outputs(tmp_path, capsys):
    svg = tmp_path / "fig.svg"
    assert cli_dispatch(["region", "--gamma", "0.75", "--grid", "20", "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    assert "<script" not in svg.read_text()
    rows = svg.with_suffix(".csv").read_text().splitlines()
    assert rows[0] == "gamma,inv_p,inv_q,status,citation"
    assert len(rows) == 1 + 21 * 21


def test_experiment_json_schema(tmp_path, capsys):
    out = tmp_path / "growth.csv"
    assert cli_dispatch(["experiment", "growth", "--gamma", "0.5", "--n-max", "6", "--out", str(out)]) == 0
    doc = json.loads(out.with_suffix(".json").read_text())
    assert list(doc) == ["experiment", "params", "citation", "rows", "verdicts", "seed", "version"]
    assert doc["citation"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k": 3}), encoding="utf-8")
    f = tmp_path / "d.csv"
    f.write_text("0,1\n", encoding="utf-8")
    assert cli_dispatch(["--config", str(cfg), "norm", "--radial", str(f), "--p", "2", "--kind", "weak"]) == 0


def test_repeat_runs_byte_identical(tmp_path, capsys):
    outs = []
    for jobs in ("1", "1", "2"):
        out = tmp_path / f"zc{len(outs)}.csv"
        argv = ["--seed", "7", "--jobs", jobs, "experiment", "zclass", "--epsilon", "0.5",
                "--gamma", "0.5", "--q", "2", "--n-max", "10", "--out", str(out)]
        assert cli_dispatch(argv) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
