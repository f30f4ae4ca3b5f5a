import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qchernoff.cli import main
from qchernoff.states import basis_state, random_density


def run(argv, capsys):
    status = main(argv)
    out, err = capsys.readouterr()
    return status, out, err


def parse_text(out):
    return dict(line.split(": ", 1) for line in out.strip().splitlines())


@pytest.fixture
def pair(write_matrix):
    return (write_matrix("rho.json", random_density(2, seed=1)),
            write_matrix("sigma.json", random_density(2, seed=2)))


def test_measures_identical(write_matrix, capsys):
    p = write_matrix("rho.json", random_density(3, seed=3))
    status, out, _ = run(["measures", p, p], capsys)
    rec = parse_text(out)
    assert status == 0
    assert float(rec["q"]) == pytest.approx(1.0, abs=1e-12)
    assert float(rec["xi_qcb"]) == pytest.approx(0.0, abs=1e-12)
    assert float(rec["trace_distance"]) == pytest.approx(0.0, abs=1e-12)
    assert float(rec["fidelity"]) == pytest.approx(1.0, abs=1e-12)


def test_measures_orthogonal(write_matrix, capsys):
    a = write_matrix("a.json", basis_state(2, 0))
    b = write_matrix("b.json", basis_state(2, 1))
    rec = parse_text(run(["measures", a, b], capsys)[1])
    assert rec["xi_qcb"] == "infinite"
    assert rec["rel_ent_rho_sigma"] == "infinite"
    assert float(rec["helstrom_p_error"]) == 0.0


def test_measures_diagonal_pair(write_matrix, diag_pair, capsys):
    a = write_matrix("a.json", diag_pair[0])
    b = write_matrix("b.json", diag_pair[1])
    rec = parse_text(run(["measures", a, b], capsys)[1])
    assert float(rec["trace_distance"]) == pytest.approx(0.5, abs=1e-12)
    assert float(rec["helstrom_p_error"]) == pytest.approx(0.25, abs=1e-12)
    assert rec["helstrom_rank"] == "1"


def test_measures_json_and_csv(pair, capsys):
    _, out, _ = run(["measures", *pair, "--format", "json"], capsys)
    rec = json.loads(out)
    _, out_csv, _ = run(["measures", *pair, "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out_csv)))
    assert rows[0][0] == "q" and rows[1][0] == rec["q"]


def test_scan_first_row_matches_measures(pair, capsys):
    _, out, _ = run(["scan", *pair, "--n-max", "1"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    rec = parse_text(run(["measures", *pair], capsys)[1])
    assert len(rows) == 1
    assert float(rows[0]["p_err"]) == pytest.approx(float(rec["helstrom_p_error"]), abs=1e-14)


def test_scan_json(pair, capsys):
    _, out, _ = run(["scan", *pair, "--n-max", "3", "--format", "json", "--priors", "0.3", "0.7"], capsys)
    payload = json.loads(out)
    assert [r["n"] for r in payload["rows"]] == [1, 2, 3]
    assert payload["priors"] == [0.3, 0.7]


def test_scan_cap_breach(pair, capsys):
    status, _, err = run(["scan", *pair, "--n-max", "3", "--cap", "4"], capsys)
    assert status == 8
    assert "SizeCapError" in err


def test_sscan_minimum_not_below_q(pair, capsys):
    _, out, _ = run(["sscan", *pair, "--points", "20"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 21
    q = float(parse_text(run(["measures", *pair], capsys)[1])["q"])
    assert min(float(r["q_s"]) for r in rows) >= q - 1e-8


def test_metric(write_matrix, capsys):
    rho = write_matrix("rho.json", np.eye(2) / 2)
    d = write_matrix("d.json", 1e-3 * np.array([[0, 1], [1, 0]]))
    status, out, _ = run(["metric", rho, d], capsys)
    assert status == 0
    assert float(parse_text(out)["ds2"]) == pytest.approx(5e-7, rel=1e-14)


def test_metric_rejects_traced_perturbation(write_matrix, capsys):
    rho = write_matrix("rho.json", np.eye(2) / 2)
    d = write_matrix("d.json", np.diag([1e-3, 0.0]))
    assert run(["metric", rho, d], capsys)[0] == 6


def test_metric_singular(write_matrix, capsys):
    rho = write_matrix("rho.json", basis_state(2, 0))
    d = write_matrix("d.json", 1e-3 * np.array([[0, 1], [1, 0]]))
    assert run(["metric", rho, d], capsys)[0] == 12


@pytest.mark.parametrize("M, code", [
    (np.array([[0.5, 0.3], [0.1, 0.5]]), 4),
    (np.diag([1.2, -0.2]), 5),
    (np.diag([0.6, 0.5]), 6),
])
def test_invalid_state_exit_codes(write_matrix, M, code, capsys):
    bad = write_matrix("bad.json", M)
    good = write_matrix("good.json", np.eye(2) / 2)
    assert run(["measures", bad, good], capsys)[0] == code


def test_dimension_mismatch(write_matrix, capsys):
    a = write_matrix("a.json", np.eye(2) / 2)
    b = write_matrix("b.json", np.eye(3) / 3)
    assert run(["measures", a, b], capsys)[0] == 7


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 1, "entries": [[NaN, 0]]}')
    status, _, err = run(["measures", str(bad), str(bad)], capsys)
    assert status == 3 and "bad.json" in err


def test_tol_loosens_trace_check(write_matrix, capsys):
    p = write_matrix("rho.json", np.diag([0.5, 0.5 + 1e-8]))
    assert run(["measures", p, p], capsys)[0] == 6
    assert run(["measures", p, p, "--tol", "1e-6"], capsys)[0] == 0


def test_unknown_check_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--check", "nonsense"])
    assert exc.value.code == 2


def test_verify_summary(capsys):
    status, out, _ = run(["verify", "--trials", "5", "--check", "theorem1"], capsys)
    lines = out.strip().splitlines()
    assert status == 0
    assert len(lines) == 5
    assert all(line.startswith("PASS theorem1") for line in lines[:4])
    assert lines[-1] == "4/4 checks passed"


def test_verify_reports_byte_identical(tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.txt"
        main(["verify", "--trials", "5", "--seed", "7", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_failures_write_replays(tmp_path, capsys):
    args = ["verify", "--trials", "2", "--check", "lemma1", "--dim", "2",
            "--tol", "1e-300", "--replay-dir", str(tmp_path)]
    status, out, _ = run(args, capsys)
    files = sorted(tmp_path.glob("*.json"))
    if status == 1:
        assert files
        _, line, _ = run(["verify", "--replay", str(files[0])], capsys)
        assert "replay lemma1" in line
    else:
        assert not files and out.startswith("PASS")


def test_verify_json(capsys):
    _, out, _ = run(["verify", "--trials", "3", "--check", "stationarity", "--format", "json"], capsys)
    data = json.loads(out)
    assert data[0]["check_name"] == "stationarity" and data[0]["passed"]


def test_module_entry_point(pair):
    proc = subprocess.run([sys.executable, "-m", "qchernoff", "measures", *pair],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("q: ")


def test_help_lists_exit_codes(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "exit codes" in capsys.readouterr().out
