"""Dense Hermitian linear-algebra kernel.

All matrix functions go through :func:`eig_hermitian`, which returns
eigenvalues in ascending order and eigenvectors with a fixed phase
convention, so every derived quantity is reproducible bit-for-bit on the
same platform.

Tolerances
----------
``HERMITIAN_RTOL``
    A matrix is accepted as Hermitian when
    ``max|M - M^H| <= HERMITIAN_RTOL * max(1, max|M|)``; it is then replaced
    by ``(M + M^H) / 2``.
``CLIP_RTOL``
    Eigenvalues with ``|lambda| <= CLIP_RTOL * max|lambda|`` are treated as
    exact zeros by the positive-semidefinite functions.  Anything more
    negative than that raises :class:`NotPositiveError`.
"""
from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DimensionError,
    EigensolverError,
    NotHermitianError,
    NotPositiveError,
    SizeCapError,
)

HERMITIAN_RTOL = 1e-10
CLIP_RTOL = 1e-12
DEFAULT_SIZE_CAP = 4096


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U, lam = self.eigenvectors, self.eigenvalues
        return (U * lam) @ U.conj().T


def as_square(M) -> np.ndarray:
    """Return ``M`` as a finite complex square matrix, or raise."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def hermiticity_defect(M) -> float:
    A = np.asarray(M)
    return float(np.max(np.abs(A - A.conj().T), initial=0.0))


def as_hermitian(M, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate Hermiticity of ``M`` and return its symmetrized copy."""
    A = as_square(M)
    scale = max(1.0, float(np.max(np.abs(A))))
    defect = hermiticity_defect(A)
    if defect > rtol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: max|M - M^H| = {defect:.3e} "
            f"exceeds {rtol:.1e} * {scale:.3e}"
        )
    return (A + A.conj().T) / 2


def _fix_phases(U: np.ndarray) -> np.ndarray:
    # make the largest-magnitude entry of each column real and positive
    idx = np.argmax(np.abs(U), axis=0)
    pivots = U[idx, np.arange(U.shape[1])]
    phases = pivots / np.abs(pivots)
    return U * phases.conj()


def eig_hermitian(M) -> SpectralDecomposition:
    """Spectral decomposition ``M = U diag(lam) U^H`` of a Hermitian matrix.

    Eigenvalues are sorted ascending; each eigenvector is normalised so its
    largest-magnitude component is real and positive.
    """
    H = as_hermitian(M)
    try:
        lam, U = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        with np.errstate(all="ignore"):
            cond = np.linalg.cond(H)
        raise EigensolverError(
            f"eigensolver did not converge (dim={H.shape[0]}, cond~{cond:.3e}): {exc}"
        ) from exc
    order = np.argsort(lam, kind="stable")
    return SpectralDecomposition(lam[order], _fix_phases(U[:, order]))


def clip_threshold(eigenvalues: np.ndarray) -> float:
    return CLIP_RTOL * float(np.max(np.abs(eigenvalues), initial=0.0))


def psd_spectrum(M) -> SpectralDecomposition:
    """Spectral decomposition with near-zero eigenvalues set to exactly 0.

    Raises :class:`NotPositiveError` if an eigenvalue lies below the clip
    window.
    """
    lam, U = eig_hermitian(M)
    clip = clip_threshold(lam)
    if lam[0] < -clip:
        raise NotPositiveError(
            f"matrix is not positive semidefinite: smallest eigenvalue {lam[0]:.3e} "
            f"below -{clip:.3e}"
        )
    lam = np.where(np.abs(lam) <= clip, 0.0, lam)
    return SpectralDecomposition(lam, U)


def spectral_function(decomp: SpectralDecomposition, values: np.ndarray) -> np.ndarray:
    """Assemble ``U diag(values) U^H`` for a precomputed decomposition."""
    U = decomp.eigenvectors
    return (U * values) @ U.conj().T


def power_of_spectrum(lam: np.ndarray, p: float) -> np.ndarray:
    """Elementwise ``lam**p`` for clipped non-negative eigenvalues.

    ``0**p = 0`` for every ``p``; in particular ``p = 0`` yields the indicator
    of the support rather than the all-ones vector.
    """
    out = np.zeros_like(lam, dtype=float)
    pos = lam > 0
    out[pos] = lam[pos] ** p
    return out


def frac_power(M, p: float) -> np.ndarray:
    """Fractional power ``M**p`` of a PSD matrix for ``p`` in ``[0, 1]``.

    ``p = 0`` returns the projector onto the support of ``M``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"exponent must lie in [0, 1], got {p}")
    decomp = psd_spectrum(M)
    return spectral_function(decomp, power_of_spectrum(decomp.eigenvalues, p))


def support_projector(M) -> np.ndarray:
    return frac_power(M, 0.0)


def matrix_log_on_support(M) -> np.ndarray:
    """Natural logarithm of a PSD matrix on its support; 0 on the kernel."""
    decomp = psd_spectrum(M)
    lam = decomp.eigenvalues
    logs = np.zeros_like(lam)
    pos = lam > 0
    logs[pos] = np.log(lam[pos])
    return spectral_function(decomp, logs)


def hermitian_function(M, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    decomp = eig_hermitian(M)
    return spectral_function(decomp, f(decomp.eigenvalues))


def jordan_positive_part(H) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jordan decomposition ``H = H_plus - H_minus``.

    Returns ``(H_plus, H_minus, P)`` where ``P`` projects onto the
    eigenspaces of ``H`` with eigenvalue strictly above the clip threshold.
    """
    decomp = eig_hermitian(H)
    lam = decomp.eigenvalues
    clip = clip_threshold(lam)
    plus = np.where(lam > clip, lam, 0.0)
    minus = np.where(lam < -clip, -lam, 0.0)
    P = spectral_function(decomp, (lam > clip).astype(float))
    return spectral_function(decomp, plus), spectral_function(decomp, minus), P


def trace_norm(M) -> float:
    """Sum of singular values; uses ``sum |eigenvalues|`` for Hermitian input."""
    A = as_square(M)
    if hermiticity_defect(A) <= HERMITIAN_RTOL * max(1.0, float(np.max(np.abs(A)))):
        return float(np.sum(np.abs(np.linalg.eigvalsh((A + A.conj().T) / 2))))
    return float(np.sum(np.linalg.svd(A, compute_uv=False)))


def kron(A, B, cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Kronecker product with the standard block layout.

    ``(A kron B)[i*dB + k, j*dB + l] = A[i, j] * B[k, l]``, i.e. the first
    factor indexes the outer blocks.
    """
    A = as_square(A)
    B = as_square(B)
    dim = A.shape[0] * B.shape[0]
    if dim > cap:
        raise SizeCapError(f"Kronecker product dimension {dim} exceeds cap {cap}")
    return np.kron(A, B)
