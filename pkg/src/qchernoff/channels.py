"""Quantum channels in Kraus form."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NotTracePreservingError, NumericalConsistencyError, QCBError
from .linalg import DEFAULT_SIZE_CAP, kron
from .states import complex_gaussian, density_from_matrix, make_rng

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class QuantumChannel:
    """CPTP map ``rho -> sum_k K_k rho K_k^H``; each ``K_k`` is ``dout x din``."""

    kraus: tuple = field(repr=False)
    din: int = 0
    dout: int = 0

    def __post_init__(self):
        ops = tuple(np.asarray(K, dtype=complex) for K in self.kraus)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dout, din = ops[0].shape
        for K in ops:
            if K.ndim != 2 or K.shape != (dout, din):
                raise DimensionError(f"Kraus operators must all be {dout}x{din}, got {K.shape}")
            if not np.all(np.isfinite(K)):
                raise ValueError("Kraus operator has non-finite entries")
        if (self.din and self.din != din) or (self.dout and self.dout != dout):
            raise DimensionError(
                f"declared {self.dout}x{self.din} does not match Kraus shape {dout}x{din}"
            )
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "din", din)
        object.__setattr__(self, "dout", dout)
        residual = completeness_residual(ops)
        if residual > COMPLETENESS_TOL:
            raise NotTracePreservingError(f"sum K^H K deviates from identity by {residual:.3e}")


def completeness_residual(kraus) -> float:
    din = kraus[0].shape[1]
    total = sum(K.conj().T @ K for K in kraus)
    return float(np.max(np.abs(total - np.eye(din))))


def apply_channel(channel: QuantumChannel, rho) -> np.ndarray:
    rho = density_from_matrix(rho)
    if rho.shape[0] != channel.din:
        raise DimensionError(f"channel expects dimension {channel.din}, state has {rho.shape[0]}")
    out = sum(K @ rho @ K.conj().T for K in channel.kraus)
    try:
        return density_from_matrix(out)
    except QCBError as exc:
        raise NumericalConsistencyError(f"channel output is not a valid state: {exc}") from exc


def random_channel(din: int, dout: int | None = None, env_dim: int | None = None, seed=0) -> QuantumChannel:
    """Channel from a random isometry ``V: C^din -> C^dout (x) C^env``.

    The isometry is the Q factor of a ``dout*env x din`` complex Gaussian
    matrix; row block ``k`` (rows ``k*dout .. (k+1)*dout``) is Kraus operator
    ``k``.  ``env_dim`` defaults to ``2 * din``.
    """
    dout = din if dout is None else dout
    env_dim = 2 * din if env_dim is None else env_dim
    if env_dim < 1:
        raise ValueError("env_dim must be at least 1")
    if dout * env_dim < din:
        raise DimensionError(f"no isometry from dimension {din} into {dout}*{env_dim}")
    rng = make_rng(seed)
    Z = complex_gaussian(rng, (dout * env_dim, din))
    V, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    V = V * (d / np.abs(d))
    return QuantumChannel(tuple(V[k * dout:(k + 1) * dout] for k in range(env_dim)))


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel((np.eye(dim, dtype=complex),))


def unitary_channel(U) -> QuantumChannel:
    return QuantumChannel((np.asarray(U, dtype=complex),))


def completely_depolarizing(dim: int) -> QuantumChannel:
    """Maps every state to ``I/dim``; Kraus set ``|i><j| / sqrt(dim)``."""
    ops = []
    for i in range(dim):
        for j in range(dim):
            K = np.zeros((dim, dim), dtype=complex)
            K[i, j] = 1 / np.sqrt(dim)
            ops.append(K)
    return QuantumChannel(tuple(ops))


def partial_trace(rho, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite state on ``C^dA (x) C^dB``.

    Uses the same layout as :func:`qchernoff.linalg.kron`: index
    ``a*dB + b`` addresses ``|a>|b>``.
    """
    dA, dB = dims
    rho = density_from_matrix(rho)
    if rho.shape[0] != dA * dB:
        raise DimensionError(f"state of dimension {rho.shape[0]} does not factor as {dA}x{dB}")
    T = rho.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ibjb->ij", T)
    if keep == "B":
        return np.einsum("aiaj->ij", T)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace_channel(dims: tuple[int, int], keep: str = "A") -> QuantumChannel:
    """Partial trace as a Kraus channel, ``K_b = I_A (x) <b|`` (or its mirror)."""
    dA, dB = dims
    ops = []
    if keep == "A":
        for b in range(dB):
            ops.append(np.kron(np.eye(dA), np.eye(dB)[b:b + 1]))
    elif keep == "B":
        for a in range(dA):
            ops.append(np.kron(np.eye(dA)[a:a + 1], np.eye(dB)))
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return QuantumChannel(tuple(ops))


def attach_ancilla(rho, tau, cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    return density_from_matrix(kron(density_from_matrix(rho), density_from_matrix(tau), cap))
