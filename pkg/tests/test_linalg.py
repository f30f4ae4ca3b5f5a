import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from qchernoff.errors import DimensionError, NotHermitianError, NotPositiveError, SizeCapError
from qchernoff.linalg import (
    as_hermitian,
    eig_hermitian,
    frac_power,
    jordan_positive_part,
    kron,
    matrix_log_on_support,
    trace_norm,
)
from qchernoff.states import random_density

from .oracles import random_hermitian

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


def test_eig_identity():
    lam, U = eig_hermitian(np.eye(2))
    np.testing.assert_array_equal(lam, [1.0, 1.0])
    np.testing.assert_allclose(U.conj().T @ U, np.eye(2), atol=1e-15)


def test_eig_diagonal_sorted():
    lam, _ = eig_hermitian(np.diag([0.75, 0.25]))
    np.testing.assert_allclose(lam, [0.25, 0.75], atol=1e-15)


def test_eig_phase_convention():
    rng = np.random.default_rng(3)
    _, U = eig_hermitian(random_hermitian(rng, 4))
    pivots = U[np.argmax(np.abs(U), axis=0), np.arange(4)]
    np.testing.assert_allclose(pivots.imag, 0, atol=1e-15)
    assert np.all(pivots.real > 0)


def test_eig_random_reconstruction():
    rng = np.random.default_rng(11)
    M = random_hermitian(rng, 4)
    d = eig_hermitian(M)
    assert np.max(np.abs(M - d.reconstruct())) <= 1e-12 * max(1, np.max(np.abs(M)))


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        as_hermitian([[1, 1], [0, 1]])


def test_accepts_rounding_level_asymmetry():
    M = np.array([[1.0, 0.5 + 1e-13], [0.5, 1.0]])
    H = as_hermitian(M)
    np.testing.assert_array_equal(H, H.conj().T)


def test_rejects_non_square():
    with pytest.raises(DimensionError):
        as_hermitian(np.zeros((2, 3)))


@given(seeds, dims)
@settings(max_examples=60, deadline=None)
def test_spectral_round_trip(seed, dim):
    M = random_hermitian(np.random.default_rng(seed), dim)
    d = eig_hermitian(M)
    assert np.max(np.abs(M - d.reconstruct())) <= 1e-12 * max(1.0, np.max(np.abs(M)))
    np.testing.assert_allclose(d.eigenvectors.conj().T @ d.eigenvectors, np.eye(dim), atol=1e-12)
    assert np.all(np.diff(d.eigenvalues) >= 0)


def test_frac_power_scalar():
    np.testing.assert_allclose(frac_power([[4.0]], 0.5), [[2.0]])


def test_frac_power_identity_exponent():
    rho = random_density(3, seed=2)
    np.testing.assert_allclose(frac_power(rho, 1.0), rho, atol=1e-14)


def test_frac_power_zero_is_support_projector():
    psi = np.array([1, 1j]) / np.sqrt(2)
    P = np.outer(psi, psi.conj())
    np.testing.assert_allclose(frac_power(P, 0.0), P, atol=1e-14)
    np.testing.assert_allclose(frac_power(np.eye(3), 0.0), np.eye(3), atol=1e-15)


def test_frac_power_matches_scipy_full_rank():
    rho = random_density(4, seed=9)
    np.testing.assert_allclose(frac_power(rho, 0.37), sla.fractional_matrix_power(rho, 0.37), atol=1e-12)


def test_frac_power_clips_rounding_negatives():
    P = np.diag([1.0, -1e-17])
    np.testing.assert_array_equal(frac_power(P, 0.5), np.diag([1.0, 0.0]))


def test_frac_power_rejects_negative():
    with pytest.raises(NotPositiveError):
        frac_power(np.diag([1.2, -0.2]), 0.5)


def test_frac_power_rejects_exponent_out_of_range():
    with pytest.raises(ValueError):
        frac_power(np.eye(2), 1.5)


@given(seeds, st.integers(2, 5), st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=60, deadline=None)
def test_frac_power_semigroup(seed, dim, p, q):
    if p + q > 1:
        p, q = p / 2, q / 2
    rho = random_density(dim, seed=seed)
    lhs = frac_power(rho, p) @ frac_power(rho, q)
    np.testing.assert_allclose(lhs, frac_power(rho, p + q), atol=1e-10)


def test_jordan_diagonal_split():
    Hp, Hm, P = jordan_positive_part(np.diag([0.25, -0.25]))
    np.testing.assert_allclose(Hp, np.diag([0.25, 0.0]), atol=1e-15)
    np.testing.assert_allclose(Hm, np.diag([0.0, 0.25]), atol=1e-15)
    np.testing.assert_allclose(P, np.diag([1.0, 0.0]), atol=1e-15)


def test_jordan_positive_input():
    rho = random_density(3, rank=2, seed=4)
    Hp, Hm, P = jordan_positive_part(rho)
    np.testing.assert_allclose(Hp, rho, atol=1e-14)
    np.testing.assert_allclose(Hm, 0, atol=1e-14)
    np.testing.assert_allclose(P, frac_power(rho, 0.0), atol=1e-12)


def test_jordan_random_residuals():
    H = random_hermitian(np.random.default_rng(5), 5)
    Hp, Hm, P = jordan_positive_part(H)
    np.testing.assert_allclose(Hp - Hm, H, atol=1e-12)
    np.testing.assert_allclose(Hp @ Hm, 0, atol=1e-12)
    np.testing.assert_allclose(P @ P, P, atol=1e-12)
    np.testing.assert_allclose(P, P.conj().T, atol=1e-15)
    assert np.linalg.eigvalsh(Hp).min() > -1e-12
    assert np.linalg.eigvalsh(Hm).min() > -1e-12


@given(seeds, dims)
@settings(max_examples=60, deadline=None)
def test_jordan_trace_identities(seed, dim):
    H = random_hermitian(np.random.default_rng(seed), dim)
    Hp, Hm, _ = jordan_positive_part(H)
    tp, tm = np.trace(Hp).real, np.trace(Hm).real
    assert abs(tp - tm - np.trace(H).real) <= 1e-10
    assert abs(tp + tm - trace_norm(H)) <= 1e-10


def test_trace_norm_values():
    assert trace_norm(np.diag([0.5, -0.5])) == pytest.approx(1.0, abs=1e-15)
    assert trace_norm(np.zeros((3, 3))) == 0.0
    gamma = 0.5 * np.diag([0.25, 0.75]) - 0.5 * np.diag([0.75, 0.25])
    assert trace_norm(gamma) == pytest.approx(0.5, abs=1e-15)


def test_trace_norm_non_hermitian_uses_singular_values():
    M = np.array([[0, 2], [0, 0]], dtype=complex)
    assert trace_norm(M) == pytest.approx(2.0)


@given(seeds, st.integers(1, 5), st.floats(-3, 3))
@settings(max_examples=60, deadline=None)
def test_trace_norm_is_a_norm(seed, dim, c):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    B = random_hermitian(rng, dim)
    assert trace_norm(A + B) <= trace_norm(A) + trace_norm(B) + 1e-10
    assert abs(trace_norm(c * A) - abs(c) * trace_norm(A)) <= 1e-10 * max(1, trace_norm(A))


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    a, b, c, d = 2.0, 3.0, 5.0, 7.0
    np.testing.assert_array_equal(kron(np.diag([a, b]), np.diag([c, d])), np.diag([a * c, a * d, b * c, b * d]))


def test_kron_layout():
    A = np.arange(4).reshape(2, 2)
    B = np.arange(9).reshape(3, 3)
    K = kron(A, B)
    for i, j, k, l in np.ndindex(2, 2, 3, 3):
        assert K[i * 3 + k, j * 3 + l] == A[i, j] * B[k, l]


def test_kron_cap():
    with pytest.raises(SizeCapError):
        kron(np.eye(64), np.eye(128))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    A, B, C, D = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
    np.testing.assert_allclose(kron(A, B) @ kron(C, D), kron(A @ C, B @ D), atol=1e-10)


def test_log_identity_and_diagonal():
    np.testing.assert_allclose(matrix_log_on_support(np.eye(3)), 0, atol=1e-15)
    np.testing.assert_allclose(matrix_log_on_support(np.diag([np.e, 1.0])), np.diag([1.0, 0.0]), atol=1e-15)


def test_log_kernel_maps_to_zero():
    np.testing.assert_allclose(matrix_log_on_support(np.diag([0.5, 0.0])), np.diag([np.log(0.5), 0.0]))


def test_log_exp_round_trip():
    H = random_hermitian(np.random.default_rng(8), 4)
    np.testing.assert_allclose(matrix_log_on_support(sla.expm(H)), H, atol=1e-10)
