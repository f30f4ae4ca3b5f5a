"""Distinguishability measures between two quantum states.

All logarithms are natural.  Functions accept any array-like density
matrices and validate them on entry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    NumericalConsistencyError,
    SingularMetricError,
    UnsupportedInputError,
)
from .linalg import (
    clip_threshold,
    frac_power,
    jordan_positive_part,
    matrix_log_on_support,
    power_of_spectrum,
    psd_spectrum,
    support_projector,
    trace_norm,
)
from .minimize import golden_section_unit
from .states import (
    PriorPair,
    density_from_matrix,
    distribution_from_vector,
    perturbation_from_matrix,
)

IMAG_TOL = 1e-10
PROJECTOR_TOL = 1e-10
SUPPORT_TOL = 1e-10
FIDELITY_CHECK_TOL = 1e-9
Q_FLOOR = 1e-300


@dataclass(frozen=True)
class ChernoffResult:
    """Minimiser of ``s -> Tr[rho^s sigma^(1-s)]`` over ``[0, 1]``.

    ``exponent`` is ``-log(q_value)``; when ``q_value`` is at or below
    ``Q_FLOOR`` it is ``math.inf`` and ``infinite`` is set.
    """

    s_star: float
    q_value: float
    exponent: float
    infinite: bool
    flat_minimum: bool
    evaluations: int


@dataclass(frozen=True)
class HelstromResult:
    p_error: float
    e1: np.ndarray

    @property
    def e0(self) -> np.ndarray:
        return np.eye(self.e1.shape[0]) - self.e1

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.e1)))))


@dataclass(frozen=True)
class HellingerArcPoint:
    s: float
    spectrum: np.ndarray
    rel_ent_to_rho: float
    rel_ent_to_sigma: float


def _state_pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    rho = density_from_matrix(rho)
    sigma = density_from_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"state dimensions differ: {rho.shape[0]} vs {sigma.shape[0]}")
    return rho, sigma


def _real_trace(M, what: str) -> float:
    tr = complex(np.trace(M))
    if abs(tr.imag) > IMAG_TOL:
        raise NumericalConsistencyError(f"{what} has imaginary part {tr.imag:.3e}")
    return tr.real


def _result(fit) -> ChernoffResult:
    q = min(max(fit.value, 0.0), 1.0)
    if q <= Q_FLOOR:
        exponent, infinite = math.inf, True
    else:
        exponent, infinite = max(0.0, -math.log(q)), False
    return ChernoffResult(fit.x, q, exponent, infinite, fit.flat, fit.evaluations)


def helstrom(rho0, rho1, priors: PriorPair = PriorPair()) -> HelstromResult:
    """Minimum single-shot error for discriminating ``rho0`` from ``rho1``.

    ``e1`` is the optimal measurement element for declaring hypothesis 1;
    it projects onto the positive part of ``pi1 rho1 - pi0 rho0``.
    """
    rho0, rho1 = _state_pair(rho0, rho1)
    return _helstrom(rho0, rho1, priors)


def _helstrom(rho0: np.ndarray, rho1: np.ndarray, priors: PriorPair) -> HelstromResult:
    gamma = priors.pi1 * rho1 - priors.pi0 * rho0
    _, _, e1 = jordan_positive_part(gamma)
    p_err = 0.5 * (1.0 - trace_norm(gamma))
    p_err = min(max(p_err, 0.0), 0.5)
    achieved = priors.pi1 - float(np.real(np.trace(e1 @ gamma)))
    if abs(achieved - p_err) > PROJECTOR_TOL:
        raise NumericalConsistencyError(
            f"Helstrom projector achieves {achieved!r}, trace-norm formula gives {p_err!r}"
        )
    return HelstromResult(p_err, e1)


def q_s(rho, sigma, s: float) -> float:
    """``Tr[rho^s sigma^(1-s)]`` with support projectors at the endpoints."""
    rho, sigma = _state_pair(rho, sigma)
    return _real_trace(frac_power(rho, s) @ frac_power(sigma, 1.0 - s), "Tr[rho^s sigma^(1-s)]")


class ChernoffCurve:
    """Fast evaluator of ``s -> Tr[rho^s sigma^(1-s)]`` for a fixed pair.

    With ``rho = U diag(lam) U^H`` and ``sigma = V diag(mu) V^H`` the trace
    equals ``sum_ij lam_i^s mu_j^(1-s) |(U^H V)_ij|^2``, so both
    eigendecompositions are computed once.
    """

    def __init__(self, rho, sigma):
        r = psd_spectrum(rho)
        t = psd_spectrum(sigma)
        self.lam = r.eigenvalues
        self.mu = t.eigenvalues
        self.weights = np.abs(r.eigenvectors.conj().T @ t.eigenvectors) ** 2

    def __call__(self, s: float) -> float:
        return float(power_of_spectrum(self.lam, s) @ self.weights @ power_of_spectrum(self.mu, 1.0 - s))

    def log_balance(self, s: float) -> float:
        """``Tr[rho^s sigma^(1-s) (log rho - log sigma)]``, the derivative in ``s``."""
        a = power_of_spectrum(self.lam, s)
        b = power_of_spectrum(self.mu, 1.0 - s)
        log_lam = np.log(self.lam, out=np.zeros_like(self.lam), where=self.lam > 0)
        log_mu = np.log(self.mu, out=np.zeros_like(self.mu), where=self.mu > 0)
        return float((a * log_lam) @ self.weights @ b - a @ self.weights @ (b * log_mu))


def chernoff(rho, sigma) -> ChernoffResult:
    """Quantum Chernoff quantity ``Q = min_s Tr[rho^s sigma^(1-s)]`` and exponent."""
    rho, sigma = _state_pair(rho, sigma)
    curve = ChernoffCurve(rho, sigma)
    return _result(golden_section_unit(curve, derivative=curve.log_balance))


def chernoff_exponent(rho, sigma) -> float:
    return chernoff(rho, sigma).exponent


def classical_chernoff(p0, p1) -> ChernoffResult:
    """Chernoff quantity of two probability vectors, same solver as :func:`chernoff`."""
    p0 = distribution_from_vector(p0)
    p1 = distribution_from_vector(p1)
    if p0.shape != p1.shape:
        raise DimensionError(f"distribution lengths differ: {p0.size} vs {p1.size}")

    log0 = np.log(p0, out=np.zeros_like(p0), where=p0 > 0)
    log1 = np.log(p1, out=np.zeros_like(p1), where=p1 > 0)

    def curve(s: float) -> float:
        return float(power_of_spectrum(p0, s) @ power_of_spectrum(p1, 1.0 - s))

    def slope(s: float) -> float:
        return float(power_of_spectrum(p0, s) @ (power_of_spectrum(p1, 1.0 - s) * (log0 - log1)))

    return _result(golden_section_unit(curve, derivative=slope))


def trace_distance(rho, sigma) -> float:
    rho, sigma = _state_pair(rho, sigma)
    return 0.5 * trace_norm(rho - sigma)


def fidelity(rho, sigma, check: bool = False) -> float:
    """Unsquared Uhlmann fidelity ``|| rho^(1/2) sigma^(1/2) ||_1``.

    With ``check=True`` the value is compared against
    ``Tr[(rho^(1/2) sigma rho^(1/2))^(1/2)]``.
    """
    rho, sigma = _state_pair(rho, sigma)
    sqrt_rho = frac_power(rho, 0.5)
    F = float(np.sum(np.linalg.svd(sqrt_rho @ frac_power(sigma, 0.5), compute_uv=False)))
    if check:
        inner = sqrt_rho @ sigma @ sqrt_rho
        F_alt = _real_trace(frac_power(inner, 0.5), "Uhlmann fidelity")
        if abs(F - F_alt) > FIDELITY_CHECK_TOL:
            raise NumericalConsistencyError(f"fidelity routes disagree: {F!r} vs {F_alt!r}")
    return min(F, 1.0)


def relative_entropy(rho, sigma) -> float:
    """``S(rho || sigma)`` in nats; ``math.inf`` when supp(rho) is not in supp(sigma)."""
    rho, sigma = _state_pair(rho, sigma)
    leak = float(np.real(np.trace(rho @ (np.eye(rho.shape[0]) - support_projector(sigma)))))
    if leak > SUPPORT_TOL:
        return math.inf
    value = _real_trace(rho @ (matrix_log_on_support(rho) - matrix_log_on_support(sigma)), "S(rho||sigma)")
    return max(value, 0.0)


def _require_full_rank(M, name: str, exc=UnsupportedInputError) -> None:
    lam = psd_spectrum(M).eigenvalues
    if lam[0] <= clip_threshold(lam):
        raise exc(f"{name} is rank deficient (smallest eigenvalue {lam[0]:.3e})")


def hellinger_arc(rho, sigma, s: float) -> HellingerArcPoint:
    """Point ``tau_s = rho^s sigma^(1-s) / Tr[rho^s sigma^(1-s)]`` on the quantum Hellinger arc.

    ``tau_s`` is not Hermitian, but it is similar to the positive matrix
    ``rho^(s/2) sigma^(1-s) rho^(s/2)``, whose spectrum is returned.  The two
    relative entropies ``S(tau_s || rho)`` and ``S(tau_s || sigma)`` coincide
    exactly at the Chernoff minimiser.
    """
    rho, sigma = _state_pair(rho, sigma)
    _require_full_rank(rho, "rho")
    _require_full_rank(sigma, "sigma")
    half = frac_power(rho, s / 2)
    sig = frac_power(sigma, 1.0 - s)
    sym = half @ sig @ half
    norm = _real_trace(sym, "Tr[rho^s sigma^(1-s)]")
    nu = np.linalg.eigvalsh((sym + sym.conj().T) / 2) / norm
    nu = np.where(nu < 0, 0.0, nu)
    nu = nu / nu.sum()
    entropy_term = float(np.sum(nu * np.log(nu, out=np.zeros_like(nu), where=nu > 0)))
    product = frac_power(rho, s) @ sig
    cross_rho = _real_trace(product @ matrix_log_on_support(rho), "Tr[X log rho]") / norm
    cross_sigma = _real_trace(product @ matrix_log_on_support(sigma), "Tr[X log sigma]") / norm
    return HellingerArcPoint(s, nu, entropy_term - cross_rho, entropy_term - cross_sigma)


def chernoff_metric(rho, drho) -> float:
    """Line element ``ds^2`` of the Chernoff metric at ``rho`` along ``drho``.

    ``ds^2 = 1/2 sum_ij |<i|drho|j>|^2 / (sqrt(lam_i) + sqrt(lam_j))^2`` in the
    eigenbasis of ``rho``.  Requires ``rho`` of full rank.
    """
    rho = density_from_matrix(rho)
    drho = perturbation_from_matrix(drho)
    if rho.shape != drho.shape:
        raise DimensionError(f"dimensions differ: {rho.shape[0]} vs {drho.shape[0]}")
    decomp = psd_spectrum(rho)
    lam = decomp.eigenvalues
    if lam[0] <= clip_threshold(lam):
        raise SingularMetricError(f"rho is rank deficient (smallest eigenvalue {lam[0]:.3e})")
    U = decomp.eigenvectors
    D = U.conj().T @ drho @ U
    root = np.sqrt(lam)
    denom = (root[:, None] + root[None, :]) ** 2
    return 0.5 * float(np.sum(np.abs(D) ** 2 / denom))


def metric_finite_difference(rho, drho) -> float:
    """``1 - Q(rho, rho - drho)``, the quantity the metric approximates to second order."""
    rho = density_from_matrix(rho)
    return 1.0 - chernoff(rho, rho - np.asarray(drho)).q_value
