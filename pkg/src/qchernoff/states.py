"""Density matrices, priors and seeded random ensembles.

States are plain ``numpy`` complex arrays; the constructors here validate
and normalise them.  Random generators are pure functions of a seed plus an
optional tuple of integer keys (see :func:`make_rng`), so independent trials
can be reordered or run concurrently without changing their draws.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotPositiveError, TraceError
from .linalg import as_hermitian, psd_spectrum, spectral_function

TRACE_ATOL = 1e-10
PRIOR_ATOL = 1e-12
PERTURBATION_TRACE_ATOL = 1e-12

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class PriorPair:
    """Prior probabilities of the two hypotheses."""

    pi0: float = 0.5
    pi1: float = 0.5

    def __post_init__(self):
        if not (0.0 < self.pi0 < 1.0 and 0.0 < self.pi1 < 1.0):
            raise ValueError(f"priors must lie strictly inside (0, 1), got {self.pi0}, {self.pi1}")
        if abs(self.pi0 + self.pi1 - 1.0) > PRIOR_ATOL:
            raise ValueError(f"priors must sum to 1, got {self.pi0} + {self.pi1}")

    @classmethod
    def from_pi0(cls, pi0: float) -> "PriorPair":
        return cls(pi0, 1.0 - pi0)


def make_rng(seed, *keys: int) -> np.random.Generator:
    """PCG64 generator derived from a 64-bit master seed and integer keys.

    ``make_rng(seed, k1, k2)`` hashes ``(seed, k1, k2)`` through
    :class:`numpy.random.SeedSequence`, so distinct key tuples give
    statistically independent streams.  A ``Generator`` passed as ``seed``
    is returned unchanged.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    ss = np.random.SeedSequence(int(seed) & _SEED_MASK, spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian entries, ``E|z|^2 = 1``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def density_from_matrix(M, atol: float = TRACE_ATOL) -> np.ndarray:
    """Validate ``M`` as a density matrix and return a clean copy.

    Raises :class:`NotHermitianError`, :class:`NotPositiveError` or
    :class:`TraceError` depending on which condition fails.
    """
    H = as_hermitian(M)
    decomp = psd_spectrum(H)
    tr = float(np.real(np.trace(H)))
    if abs(tr - 1.0) > atol:
        raise TraceError(f"trace is {tr!r}, expected 1 within {atol:.1e}")
    if np.any(np.linalg.eigvalsh(H) < 0):
        # tiny negative eigenvalues were clipped; rebuild from the clipped spectrum
        H = spectral_function(decomp, decomp.eigenvalues)
    return H


def perturbation_from_matrix(M, atol: float = PERTURBATION_TRACE_ATOL) -> np.ndarray:
    """Validate ``M`` as a traceless Hermitian perturbation."""
    H = as_hermitian(M)
    tr = complex(np.trace(H))
    if abs(tr) > atol:
        raise TraceError(f"perturbation must be traceless, trace is {tr.real:.3e}")
    return H


def distribution_from_vector(p, atol: float = PRIOR_ATOL) -> np.ndarray:
    """Validate a classical probability vector."""
    v = np.asarray(p, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("distribution has non-finite entries")
    if np.any(v < 0):
        raise NotPositiveError("distribution has negative entries")
    if abs(v.sum() - 1.0) > atol:
        raise TraceError(f"distribution sums to {v.sum()!r}, expected 1")
    return v


def random_density(dim: int, rank: int | None = None, seed=0) -> np.ndarray:
    """Random state ``G G^H / Tr[G G^H]`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be between 1 and dim={dim}, got {rank}")
    rng = make_rng(seed)
    G = complex_gaussian(rng, (dim, rank))
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.real(np.trace(rho))


def random_pure(dim: int, seed=0) -> np.ndarray:
    return random_density(dim, 1, seed)


def random_unitary(dim: int, seed=0) -> np.ndarray:
    """Unitary from the QR decomposition of a complex Ginibre matrix.

    The columns of ``Q`` are rescaled by the phases of ``diag(R)`` so that
    the factorisation is unique, which makes the ensemble Haar distributed.
    """
    rng = make_rng(seed)
    Z = complex_gaussian(rng, (dim, dim))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_perturbation(dim: int, eps: float, seed=0) -> np.ndarray:
    """Traceless Hermitian direction scaled so that ``max|entry| == eps``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    rng = make_rng(seed)
    Z = complex_gaussian(rng, (dim, dim))
    H = (Z + Z.conj().T) / 2
    H -= np.trace(H) / dim * np.eye(dim)
    H *= eps / np.max(np.abs(H))
    # remove the rounding residue of the rescale
    H -= np.trace(H) / dim * np.eye(dim)
    return H


def random_distribution(n: int, seed=0) -> np.ndarray:
    rng = make_rng(seed)
    p = rng.exponential(size=n)
    return p / p.sum()


def basis_state(dim: int, index: int) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def pure_state(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim
