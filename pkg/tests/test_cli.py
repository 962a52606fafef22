import csv
import io
import json
import subprocess
import sys

import pytest

from infomarket import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def exit_code(argv):
    try:
        return cli.main(argv)
    except SystemExit as exc:  # argparse usage errors
        return exc.code


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_simulate_csv(capsys):
    code, out, _ = run(["simulate", "--n", "10", "--rho", "0.5", "--setting", "cap",
                        "--trials", "300", "--gap", "none:quality"], capsys)
    assert code == 0
    rows = parse_csv(out)
    assert [r["name"] for r in rows] == ["none", "quality", "full", "none:quality"]
    assert float(rows[0]["analytic"]) == 2.0


def test_simulate_allocation(tmp_path, capsys):
    caps = tmp_path / "caps.txt"
    caps.write_text("2 1 1\n")
    code, out, _ = run(["simulate", "--capacities", str(caps), "--allocation", "0",
                        "--regime", "full"], capsys)
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 4
    items = [int(r["item"]) for r in rows]
    assert sorted(items) == [0, 0, 1, 2]


def test_sweep_config_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({
        "setting": "cap", "dist_q": "pareto:1,2",
        "dist_phi": {"family": "exponential", "params": {"c": 1, "lambda": 1}},
        "n_grid": [6], "rho_grid": [0, 0.5, 1], "trials": 200, "seed": 2,
    }))
    code, out, _ = run(["sweep", "--config", str(cfg)], capsys)
    assert code == 0 and len(parse_csv(out)) == 6
    code, out, _ = run(["sweep", "--config", str(cfg), "--rho", "0.25", "--gap", "q:u"], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 1
    assert rows[0]["rho"] == "0.25" and rows[0]["seed"] == "2" and rows[0]["dist_phi"] == "exponential:1,1"


def test_sweep_byte_identical_across_workers(tmp_path):
    outs = []
    for w in (1, 3):
        path = tmp_path / f"w{w}.csv"
        assert cli.main(["sweep", "--setting", "cap", "--n", "5", "--rho", "0,1", "--trials", "4500",
                         "--workers", str(w), "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_json(capsys):
    code, out, _ = run(["sweep", "--n", "5", "--rho", "0.5", "--trials", "20", "--format", "json"], capsys)
    body = json.loads(out)
    assert code == 0 and body["meta"]["sweep"]["n_grid"] == [5] and len(body["rows"]) == 2


def test_predict(capsys):
    code, out, _ = run(["predict", "--setting", "cap", "--dist-q", "uniform:0,1",
                        "--dist-phi", "uniform:0,1", "--rho", "1", "--n", "100", "--gap", "q:u"], capsys)
    row = parse_csv(out)[0]
    assert code == 0
    assert row["theorem_id"] == "cap:uniform:personal"
    assert float(row["upper_bound"]) == pytest.approx(0.4580272149226137)


def test_figure_curves(capsys):
    code, out, _ = run(["figure", "uncap-pareto-g"], capsys)
    assert code == 0 and len(parse_csv(out)) == 84


def test_validate_single_suite(capsys):
    code, out, err = run(["validate", "asymptotics", "--format", "json"], capsys)
    assert code == 0
    assert all(r["pass"] for r in json.loads(out)["rows"])
    assert "checks passed" in err


def test_oracle_quad_and_brute(tmp_path, capsys):
    code, out, _ = run(["oracle", "quad", "--dist", "exponential:1,1", "--m", "4,50"], capsys)
    assert code == 0 and len(parse_csv(out)) == 2
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"q": [0, 0], "phi": [[3, 1], [2, 5]]}))
    code, out, _ = run(["oracle", "brute", "--instance", str(inst), "--rho", "1", "--regime", "full"], capsys)
    assert code == 0 and float(parse_csv(out)[0]["welfare"]) == 4.0


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 1),
    (["simulate", "--n", "abc"], 1),
    (["simulate", "--n", "-3"], 1),
    (["simulate", "--dist-q", "weibull:1,2"], 1),
    (["predict", "--dist-q", "pareto:1,2", "--dist-phi", "exponential:1,1", "--gap", "q:u"], 1),
    (["figure", "nope"], 1),
    (["simulate", "--setting", "cap", "--n", "100000", "--trials", "10"], 3),
    (["oracle", "quad", "--dist", "pareto:1,1.01", "--m", "1000"], 3),
    (["oracle", "limit"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert exit_code(argv) == code


def test_usage_error_exit_status_is_one():
    proc = subprocess.run([sys.executable, "-m", "infomarket.cli", "simulate", "--n", "abc"],
                          capture_output=True, text=True)
    assert proc.returncode == 1

