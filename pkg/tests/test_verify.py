import math

import numpy as np
import pytest

from qchernoff.io import load_replay, write_replay
from qchernoff.states import basis_state, random_density
from qchernoff.verify import (
    CHECKS,
    VerificationReport,
    bound_chain_margins,
    check_theorem1,
    lemma1_margin,
    replay,
    run_all,
    run_check,
    theorem1_margin,
    theorem2_margin,
)


def test_theorem1_margin_equal_operators():
    A = random_density(3, seed=1)
    for s in (0.0, 0.3, 1.0):
        assert theorem1_margin(A, A, s) == pytest.approx(0.0, abs=1e-12)


def test_theorem1_margin_orthogonal():
    A, B = basis_state(2, 0), basis_state(2, 1)
    assert theorem1_margin(A, B, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_theorem1_margin_with_zero():
    A = random_density(3, seed=2)
    assert theorem1_margin(A, np.zeros((3, 3)), 0.5) == pytest.approx(0.0, abs=1e-15)


def test_theorem1_margin_is_scale_invariant():
    A, B = 7 * random_density(3, seed=3), 3 * random_density(3, seed=4)
    m = theorem1_margin(A, B, 0.4)
    assert m >= 0
    assert theorem1_margin(10 * A, 10 * B, 0.4) == pytest.approx(m, rel=1e-10)


def test_lemma1_and_theorem2_nonnegative():
    A, B = 2 * random_density(4, seed=5), random_density(4, 2, seed=6)
    assert lemma1_margin(A, B, 0.5) >= -1e-12
    assert theorem2_margin(A, B) >= -1e-12
    assert theorem2_margin(A, A) == pytest.approx(0.0, abs=1e-12)


def test_bound_chain_margins():
    rho, sigma = random_density(2, seed=7), random_density(2, seed=8)
    assert all(m >= -1e-12 for m in bound_chain_margins(rho, sigma))


def test_run_check_deterministic():
    a = run_check("theorem1", seed=3, trials=20, dim=2)
    b = run_check("theorem1", seed=3, trials=20, dim=2)
    assert a.format_line() == b.format_line()
    assert a.passed and a.trials == 20


def test_seed_changes_ensemble():
    a = run_check("theorem1", seed=3, trials=5, dim=3)
    b = run_check("theorem1", seed=4, trials=5, dim=3)
    assert a.worst_margin != b.worst_margin


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        run_check("theorem1", trials=0)
    with pytest.raises(ValueError):
        run_all(trials=0)
    with pytest.raises(ValueError):
        run_check("no_such_check", trials=1)


def test_wrappers():
    report = check_theorem1(seed=0, trials=5, dim=2)
    assert report.check_name == "theorem1" and report.dim == 2


@pytest.mark.parametrize("name", list(CHECKS))
def test_every_check_passes_small_run(name):
    for dim in CHECKS[name].dims[:2]:
        report = run_check(name, seed=11, trials=25, dim=dim)
        assert report.passed, report.format_line()
        assert math.isfinite(report.worst_margin)


def test_forced_failure_produces_replay(tmp_path):
    # a negative tolerance makes any trial count as a violation
    report = run_check("theorem2", seed=1, trials=3, dim=2, tolerance=-1.0)
    assert report.failures == 3 and not report.passed
    assert report.format_line().startswith("FAIL")
    path = write_replay(report.replays[1], tmp_path)
    record = load_replay(path)
    assert record["trial_index"] == 1
    assert replay(record) == pytest.approx(record["margin"], abs=0)


def test_replay_detects_tampered_inputs(tmp_path):
    report = run_check("lemma1", seed=2, trials=1, dim=2, tolerance=-1.0)
    record = report.replays[0]
    record["inputs"][0]["entries"][0][0] += 1e-6
    with pytest.raises(ValueError):
        replay(record)


def test_report_dict():
    report = VerificationReport("x", 2, 10, 0, 0.5, 0, 1e-9)
    d = report.to_dict()
    assert d["passed"] and d["check_name"] == "x"
