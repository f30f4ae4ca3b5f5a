"""Exact n-copy discrimination: tensor powers and the error-rate scan."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeCapError
from .linalg import DEFAULT_SIZE_CAP
from .measures import _state_pair, chernoff, q_s
from .states import PriorPair, density_from_matrix


@dataclass(frozen=True)
class CopyScanRow:
    n: int
    p_err: float
    rate: float
    theorem1_bound: float

    @property
    def rate_infinite(self) -> bool:
        return math.isinf(self.rate)


@dataclass(frozen=True)
class CopyScanResult:
    rows: tuple
    xi_qcb: float
    s_star: float
    q_value: float
    priors: PriorPair


def _check_cap(dim: int, n: int, cap: int) -> None:
    if dim ** n > cap:
        raise SizeCapError(f"{dim}^{n} = {dim ** n} exceeds size cap {cap}")


def tensor_power(rho, n: int, cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be a positive integer")
    rho = density_from_matrix(rho)
    _check_cap(rho.shape[0], n, cap)
    out = rho
    for _ in range(n - 1):
        out = np.kron(out, rho)
    return out


def p_err_n(rho0, rho1, priors: PriorPair = PriorPair(), n: int = 1, cap: int = DEFAULT_SIZE_CAP) -> float:
    """Minimum error probability for ``n`` copies, by exact trace norm."""
    rho0, rho1 = _state_pair(rho0, rho1)
    _check_cap(rho0.shape[0], n, cap)
    return _error_probability(tensor_power(rho0, n, cap), tensor_power(rho1, n, cap), priors)


def _error_probability(rho0: np.ndarray, rho1: np.ndarray, priors: PriorPair) -> float:
    # spectrum only; the measurement projector is not needed here
    gamma = priors.pi1 * rho1 - priors.pi0 * rho0
    norm = float(np.sum(np.abs(np.linalg.eigvalsh(gamma))))
    return min(max(0.5 * (1.0 - norm), 0.0), 0.5)


def copy_scan(rho0, rho1, priors: PriorPair = PriorPair(), n_max: int = 10,
              cap: int = DEFAULT_SIZE_CAP) -> CopyScanResult:
    """Tabulate ``P_e,min,n`` and ``-log(P_e,min,n)/n`` for ``n = 1..n_max``.

    Each row also carries ``pi0^(1-s) pi1^s Q^n`` evaluated at the
    single-copy minimiser ``s``; this upper-bounds the exact error at every
    ``n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rho0, rho1 = _state_pair(rho0, rho1)
    _check_cap(rho0.shape[0], n_max, cap)
    # s parametrises Tr[rho1^s rho0^(1-s)] so it pairs with pi1^s pi0^(1-s)
    res = chernoff(rho1, rho0)
    s = res.s_star
    prefactor = priors.pi0 ** (1.0 - s) * priors.pi1 ** s
    rows = []
    power0, power1 = rho0, rho1
    for n in range(1, n_max + 1):
        if n > 1:
            power0 = np.kron(power0, rho0)
            power1 = np.kron(power1, rho1)
        p = _error_probability(power0, power1, priors)
        rate = -math.log(p) / n if p > 0 else math.inf
        rows.append(CopyScanRow(n, p, rate, prefactor * res.q_value ** n))
    return CopyScanResult(tuple(rows), res.exponent, s, res.q_value, priors)


def theorem1_bound(rho0, rho1, priors: PriorPair, s: float, n: int) -> float:
    """``pi0^(1-s) pi1^s Tr[rho1^s rho0^(1-s)]^n``, valid for any ``s`` in ``[0, 1]``."""
    return priors.pi0 ** (1.0 - s) * priors.pi1 ** s * q_s(rho1, rho0, s) ** n

