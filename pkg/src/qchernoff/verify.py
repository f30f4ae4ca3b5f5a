"""Randomised verification of the trace inequalities and Chernoff properties.

Every check draws its inputs for trial ``i`` from
``make_rng(seed, key(check_name), dim, i)``, so a single trial can be
replayed from ``(check_name, seed, dim, trial_index)`` alone.  Each trial
yields a *margin*, oriented so that ``margin >= -tolerance`` is a pass.
Margins of inequalities between unnormalised operators are divided by the
matching power of ``max(1, max(Tr A, Tr B))``.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channels import apply_channel, partial_trace, random_channel
from .io import matrix_from_json, matrix_to_json
from .linalg import (
    jordan_positive_part,
    power_of_spectrum,
    psd_spectrum,
    spectral_function,
    trace_norm,
)
from .measures import (
    ChernoffCurve,
    chernoff,
    classical_chernoff,
    fidelity,
    hellinger_arc,
    q_s,
    trace_distance,
)
from .states import make_rng, random_density, random_unitary

DEFAULT_TOL = 1e-9
S_GRID = np.linspace(0.0, 1.0, 11)
RANDOM_S_PER_TRIAL = 5
MAX_REDRAWS = 100


@dataclass
class VerificationReport:
    check_name: str
    dim: int
    trials: int
    failures: int
    worst_margin: float
    seed: int
    tolerance: float
    replays: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def format_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.check_name} dim={self.dim} trials={self.trials} "
                f"failures={self.failures} worst_margin={self.worst_margin!r} "
                f"tolerance={self.tolerance!r} seed={self.seed}")

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "dim": self.dim,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_key(name: str) -> int:
    return zlib.crc32(name.encode())


def trial_rng(name: str, seed: int, dim: int, index: int) -> np.random.Generator:
    return make_rng(seed, check_key(name), dim, index)


# --------------------------------------------------------------------------
# margins on explicit inputs


def _scale(A, B) -> float:
    return max(1.0, float(np.real(np.trace(A))), float(np.real(np.trace(B))))


def theorem1_margin(A, B, s: float) -> float:
    """``Tr[A^s B^(1-s)] - Tr[A + B - |A - B|]/2``, scale normalised."""
    a, b = psd_spectrum(A), psd_spectrum(B)
    return _theorem1_margin(A, B, a, b, s)


def _theorem1_margin(A, B, a, b, s: float) -> float:
    lhs = np.real(np.trace(spectral_function(a, power_of_spectrum(a.eigenvalues, s))
                           @ spectral_function(b, power_of_spectrum(b.eigenvalues, 1.0 - s))))
    rhs = 0.5 * (np.real(np.trace(A + B)) - trace_norm(A - B))
    return float(lhs - rhs) / _scale(A, B)


def lemma1_margin(A, B, t: float) -> float:
    """``Tr[P B (A^t - B^t)]`` with ``P`` the projector onto the range of ``(A - B)_+``."""
    _, _, P = jordan_positive_part(A - B)
    a, b = psd_spectrum(A), psd_spectrum(B)
    diff = (spectral_function(a, power_of_spectrum(a.eigenvalues, t))
            - spectral_function(b, power_of_spectrum(b.eigenvalues, t)))
    value = float(np.real(np.trace(P @ B @ diff)))
    return value / _scale(A, B) ** (1.0 + t)


def theorem2_margin(A, B) -> float:
    """``(Tr[A + B])^2 - ||A - B||_1^2 - 4 (Tr[A^(1/2) B^(1/2)])^2``, scale normalised."""
    a, b = psd_spectrum(A), psd_spectrum(B)
    cross = np.real(np.trace(spectral_function(a, np.sqrt(a.eigenvalues))
                             @ spectral_function(b, np.sqrt(b.eigenvalues))))
    value = np.real(np.trace(A + B)) ** 2 - trace_norm(A - B) ** 2 - 4.0 * cross ** 2
    return float(value) / _scale(A, B) ** 2


def bound_chain_margins(rho, sigma) -> tuple[float, float, float]:
    """Margins of ``1 - Q <= T``, ``T <= sqrt(1 - Q^2)``, ``sqrt(1 - Q^2) <= 1 - Q^2/2``."""
    Q = chernoff(rho, sigma).q_value
    T = trace_distance(rho, sigma)
    upper = math.sqrt(max(0.0, 1.0 - Q * Q))
    return T - (1.0 - Q), upper - T, (1.0 - Q * Q / 2.0) - upper


# --------------------------------------------------------------------------
# random inputs


def _random_positive(rng, dim: int) -> np.ndarray:
    rank = int(rng.integers(1, dim + 1))
    scale = 10.0 ** rng.uniform(-1.0, 1.0)
    return scale * random_density(dim, rank, rng)


def _random_state(rng, dim: int, full_rank: bool = False) -> np.ndarray:
    rank = dim if full_rank else int(rng.integers(1, dim + 1))
    return random_density(dim, rank, rng)


# --------------------------------------------------------------------------
# trials: each takes (rng, dim) and returns (margin, inputs, params)

TrialFn = Callable[[np.random.Generator, int], tuple]


def _trial_theorem1(rng, dim):
    A, B = _random_positive(rng, dim), _random_positive(rng, dim)
    ss = np.concatenate([S_GRID, rng.uniform(0.0, 1.0, RANDOM_S_PER_TRIAL)])
    a, b = psd_spectrum(A), psd_spectrum(B)
    margins = [_theorem1_margin(A, B, a, b, s) for s in ss]
    k = int(np.argmin(margins))
    return margins[k], [A, B], {"s": float(ss[k])}


def _trial_lemma1(rng, dim):
    A, B = _random_positive(rng, dim), _random_positive(rng, dim)
    t = float(rng.uniform(0.0, 1.0))
    return lemma1_margin(A, B, t), [A, B], {"t": t}


def _trial_theorem2(rng, dim):
    A, B = _random_positive(rng, dim), _random_positive(rng, dim)
    return theorem2_margin(A, B), [A, B], {}


def _trial_bound_chain(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    return min(bound_chain_margins(rho, sigma)), [rho, sigma], {}


def _trial_fidelity_dominance(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    return fidelity(rho, sigma) - chernoff(rho, sigma).q_value, [rho, sigma], {}


def _trial_convexity(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    s1, s2 = sorted(rng.uniform(0.0, 1.0, 2))
    mid = q_s(rho, sigma, (s1 + s2) / 2)
    chord = (q_s(rho, sigma, s1) + q_s(rho, sigma, s2)) / 2
    return chord - mid, [rho, sigma], {"s1": float(s1), "s2": float(s2)}


def _trial_monotonicity(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    dout = int(rng.integers(1, dim + 2))
    channel = random_channel(dim, dout, seed=rng)
    before = chernoff(rho, sigma).q_value
    after = chernoff(apply_channel(channel, rho), apply_channel(channel, sigma)).q_value
    return after - before, [rho, sigma, *channel.kraus], {"dout": dout}


def _trial_partial_trace(rng, dim):
    rho, sigma = _random_state(rng, 2 * dim), _random_state(rng, 2 * dim)
    before = chernoff(rho, sigma).q_value
    after = chernoff(partial_trace(rho, (dim, 2), "A"), partial_trace(sigma, (dim, 2), "A")).q_value
    return after - before, [rho, sigma], {}


def _trial_ancilla(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    tau = _random_state(rng, 2)
    q = chernoff(rho, sigma).q_value
    q_ext = chernoff(np.kron(rho, tau), np.kron(sigma, tau)).q_value
    return -abs(q_ext - q), [rho, sigma, tau], {}


def _trial_unitary_invariance(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    U = random_unitary(dim, rng)
    q = chernoff(rho, sigma).q_value
    q_rot = chernoff(U @ rho @ U.conj().T, U @ sigma @ U.conj().T).q_value
    return -abs(q_rot - q), [rho, sigma, U], {}


def _trial_joint_concavity(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    rho2, sigma2 = _random_state(rng, dim), _random_state(rng, dim)
    w = float(rng.uniform(0.0, 1.0))
    mixed = chernoff(w * rho + (1 - w) * rho2, w * sigma + (1 - w) * sigma2).q_value
    average = w * chernoff(rho, sigma).q_value + (1 - w) * chernoff(rho2, sigma2).q_value
    return mixed - average, [rho, sigma, rho2, sigma2], {"w": w}


def _interior_pair(rng, dim):
    for _ in range(MAX_REDRAWS):
        rho, sigma = _random_state(rng, dim, True), _random_state(rng, dim, True)
        res = chernoff(rho, sigma)
        if 1e-3 < res.s_star < 1 - 1e-3:
            return rho, sigma, res
    raise RuntimeError("no pair with interior minimiser found")


def _trial_stationarity(rng, dim):
    rho, sigma, res = _interior_pair(rng, dim)
    point = hellinger_arc(rho, sigma, res.s_star)
    return -abs(point.rel_ent_to_rho - point.rel_ent_to_sigma), [rho, sigma], {"s_star": res.s_star}


def _trial_multiplicativity(rng, dim):
    rho, sigma = _random_state(rng, dim), _random_state(rng, dim)
    q = chernoff(rho, sigma).q_value
    q2 = chernoff(np.kron(rho, rho), np.kron(sigma, sigma)).q_value
    return -abs(q2 - q * q), [rho, sigma], {}


def _trial_pure_collapse(rng, dim):
    rho, sigma = random_density(dim, 1, rng), _random_state(rng, dim, True)
    res = chernoff(rho, sigma)
    overlap = float(np.real(np.trace(rho @ sigma)))
    F = fidelity(rho, sigma)
    margin = min(-abs(res.q_value - overlap), -abs(res.q_value - F * F), 1e-6 - res.s_star)
    return margin, [rho, sigma], {"s_star": res.s_star}


def _trial_classical_reduction(rng, dim):
    p = rng.exponential(size=dim)
    q = rng.exponential(size=dim)
    # occasionally knock out support to exercise the endpoint convention
    if rng.uniform() < 0.25:
        p[rng.integers(dim)] = 0.0
    if rng.uniform() < 0.25:
        q[rng.integers(dim)] = 0.0
    p, q = p / p.sum(), q / q.sum()
    U = random_unitary(dim, rng)
    rho = U @ np.diag(p) @ U.conj().T
    sigma = U @ np.diag(q) @ U.conj().T
    quantum = chernoff(rho, sigma)
    classical = classical_chernoff(p, q)
    margin = min(-abs(quantum.q_value - classical.q_value),
                 1e-6 - abs(quantum.s_star - classical.s_star))
    return margin, [rho, sigma], {"p": p.tolist(), "q": q.tolist()}


@dataclass(frozen=True)
class Check:
    name: str
    trial: TrialFn
    dims: tuple
    tolerance: float = DEFAULT_TOL


CHECKS: dict[str, Check] = {c.name: c for c in [
    Check("theorem1", _trial_theorem1, (2, 3, 4, 6)),
    Check("lemma1", _trial_lemma1, (2, 3, 4, 6)),
    Check("theorem2", _trial_theorem2, (2, 3, 4, 6)),
    Check("bound_chain", _trial_bound_chain, (2, 3, 4)),
    Check("fidelity_dominance", _trial_fidelity_dominance, (2, 3, 4)),
    Check("convexity", _trial_convexity, (2, 3, 4), 1e-10),
    Check("monotonicity", _trial_monotonicity, (2, 3)),
    Check("partial_trace_monotonicity", _trial_partial_trace, (2, 3)),
    Check("ancilla_equality", _trial_ancilla, (2, 3)),
    Check("unitary_invariance", _trial_unitary_invariance, (2, 3)),
    Check("joint_concavity", _trial_joint_concavity, (2, 3)),
    Check("stationarity", _trial_stationarity, (2,), 1e-6),
    Check("multiplicativity", _trial_multiplicativity, (2,), 1e-8),
    Check("pure_state_collapse", _trial_pure_collapse, (2, 3)),
    Check("classical_reduction", _trial_classical_reduction, (2, 3, 4), 1e-10),
]}


def _replay_record(name, seed, dim, index, inputs, params, margin) -> dict:
    return {
        "check_name": name,
        "seed": seed,
        "dim": dim,
        "trial_index": index,
        "margin": margin,
        "params": params,
        "inputs": [matrix_to_json(M) for M in inputs],
    }


def run_check(name: str, seed: int = 0, trials: int = 1000, dim: int | None = None,
              tolerance: float | None = None) -> VerificationReport:
    """Run ``trials`` independent trials of one check at one dimension."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    try:
        check = CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}") from None
    dim = check.dims[0] if dim is None else dim
    tol = check.tolerance if tolerance is None else tolerance
    worst = math.inf
    replays = []
    for i in range(trials):
        margin, inputs, params = check.trial(trial_rng(name, seed, dim, i), dim)
        worst = min(worst, margin)
        if margin < -tol:
            replays.append(_replay_record(name, seed, dim, i, inputs, params, margin))
    return VerificationReport(name, dim, trials, len(replays), worst, seed, tol, replays)


def check_theorem1(seed: int = 0, trials: int = 1000, dim: int = 4) -> VerificationReport:
    return run_check("theorem1", seed, trials, dim)


def check_lemma1(seed: int = 0, trials: int = 1000, dim: int = 4) -> VerificationReport:
    return run_check("lemma1", seed, trials, dim)


def check_theorem2(seed: int = 0, trials: int = 1000, dim: int = 4) -> VerificationReport:
    return run_check("theorem2", seed, trials, dim)


def check_bound_chain(seed: int = 0, trials: int = 1000, dim: int = 2) -> VerificationReport:
    return run_check("bound_chain", seed, trials, dim)


def run_all(seed: int = 0, trials: int = 1000, checks=None, dims=None,
            tolerance: float | None = None) -> list[VerificationReport]:
    """Run every registered check (or the named subset) at its default dimensions."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = list(CHECKS) if checks is None else list(checks)
    reports = []
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        for d in (CHECKS[name].dims if dims is None else dims):
            reports.append(run_check(name, seed, trials, d, tolerance))
    return reports


def replay(record: dict) -> float:
    """Recompute the margin of a recorded trial from its seed and index.

    The regenerated inputs are compared with the stored ones, guarding
    against silent changes in the random ensemble.
    """
    name, dim = record["check_name"], record["dim"]
    margin, inputs, _ = CHECKS[name].trial(trial_rng(name, record["seed"], dim, record["trial_index"]), dim)
    stored = [matrix_from_json(m) for m in record.get("inputs", [])]
    for a, b in zip(stored, inputs):
        if a.shape != np.shape(b) or not np.allclose(a, b, rtol=0, atol=1e-15):
            raise ValueError("replay inputs differ from the regenerated ones")
    return margin
