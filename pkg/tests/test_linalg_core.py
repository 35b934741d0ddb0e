import math

import numpy as np
import pytest

from src.errors import ContractViolation
from src.linalg_core import (
    SUBSYSTEM_A,
    SUBSYSTEM_B,
    eig_hermitian,
    haar_unitary,
    hermitian_function,
    is_hermitian,
    is_unitary,
    majorizes,
    norm_of_values,
    partial_trace,
    partial_transpose,
    purity,
    random_density,
    random_hermitian,
    random_matrix,
    schatten_norm,
    shannon_entropy,
    spectra_distance,
    von_neumann_entropy,
)


def test_eig_hermitian_sorted_and_reconstructs(rng):
    H = random_hermitian(5, rng)
    spectrum, U = eig_hermitian(H)
    assert np.all(np.diff(spectrum.values) <= 0)
    np.testing.assert_allclose(U @ np.diag(spectrum.values) @ U.conj().T, H, atol=1e-12)
    assert is_unitary(U)


def test_eig_hermitian_reconstructs_random_matrices(rng):
    for _ in range(500):
        d = int(rng.integers(1, 17))
        H = random_hermitian(d, rng)
        spectrum, U = eig_hermitian(H)
        assert np.max(np.abs(H - (U * spectrum.values) @ U.conj().T)) <= 1e-10


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ContractViolation):
        eig_hermitian(np.zeros((2, 3)))


def test_hermitian_function_square_root(rng):
    rho = random_density(4, rng)
    root = hermitian_function(rho, lambda x: np.sqrt(np.clip(x, 0, None)))
    np.testing.assert_allclose(root @ root, rho, atol=1e-12)


def test_schatten_norms_of_diagonal():
    A = np.diag([3.0, -4.0])
    assert math.isclose(schatten_norm(A, 1), 7.0)
    assert math.isclose(schatten_norm(A, 2), 5.0)
    assert math.isclose(schatten_norm(A, math.inf), 4.0)


def test_schatten_norm_non_hermitian_uses_singular_values():
    A = np.array([[0, 2], [0, 0]])
    assert math.isclose(schatten_norm(A, 3), 2.0)


def test_schatten_index_below_one_rejected():
    with pytest.raises(ContractViolation):
        schatten_norm(np.eye(2), 0.5)
    with pytest.raises(ContractViolation):
        norm_of_values([1.0], float("nan"))


def test_norm_of_values_large_p_does_not_underflow():
    assert math.isclose(norm_of_values([1e-200, 1e-200], 400), 1e-200 * 2 ** (1 / 400))


def test_entropy_conventions():
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert math.isclose(shannon_entropy([0.5, 0.5]), 1.0)
    assert math.isclose(shannon_entropy([0.5, 0.5], base=math.e), math.log(2))
    assert math.isclose(von_neumann_entropy(np.eye(4) / 4), 2.0)


def test_entropy_bounds(rng):
    for d in (2, 3, 5, 8):
        for rank in range(1, d + 1):
            S = von_neumann_entropy(random_density(d, rng, rank=rank))
            assert -1e-12 <= S <= math.log2(rank) + 1e-12
            assert S <= math.log2(d) + 1e-12


def test_von_neumann_entropy_rejects_bad_trace():
    with pytest.raises(ContractViolation):
        von_neumann_entropy(np.eye(2))


def test_purity_of_pure_and_mixed():
    psi = np.array([1, 1j]) / math.sqrt(2)
    assert math.isclose(purity(np.outer(psi, psi.conj())), 1.0)
    assert math.isclose(purity(np.eye(3) / 3), 1 / 3)


def test_partial_trace_of_product(rng):
    A = random_density(2, rng)
    B = random_density(3, rng)
    rho = np.kron(A, B)
    np.testing.assert_allclose(partial_trace(rho, 2, 3, SUBSYSTEM_B), A, atol=1e-12)
    np.testing.assert_allclose(partial_trace(rho, 2, 3, SUBSYSTEM_A), B, atol=1e-12)


@pytest.mark.parametrize("dimA,dimB", [(2, 2), (2, 3), (3, 4), (4, 2)])
def test_partial_trace_of_random_products(dimA, dimB, rng):
    for _ in range(20):
        A = random_matrix(dimA, rng)
        B = random_matrix(dimB, rng)
        M = np.kron(A, B)
        np.testing.assert_allclose(partial_trace(M, dimA, dimB, SUBSYSTEM_B), np.trace(B) * A, atol=1e-11)
        np.testing.assert_allclose(partial_trace(M, dimA, dimB, SUBSYSTEM_A), np.trace(A) * B, atol=1e-11)


@pytest.mark.parametrize("which", [SUBSYSTEM_A, SUBSYSTEM_B])
def test_partial_transpose_is_trace_preserving_involution(which, rng):
    for _ in range(20):
        M = random_hermitian(6, rng)
        pt = partial_transpose(M, 2, 3, which)
        assert np.trace(pt) == np.trace(M)
        assert is_hermitian(pt)
        np.testing.assert_array_equal(partial_transpose(pt, 2, 3, which), M)


def test_partial_transpose_of_product(rng):
    A = random_hermitian(2, rng)
    B = random_hermitian(3, rng)
    np.testing.assert_allclose(partial_transpose(np.kron(A, B), 2, 3, SUBSYSTEM_B),
                               np.kron(A, B.T), atol=1e-12)
    np.testing.assert_allclose(partial_transpose(np.kron(A, B), 2, 3, SUBSYSTEM_A),
                               np.kron(A.T, B), atol=1e-12)


def test_partial_transpose_of_bell_state_is_swap():
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    pt = partial_transpose(np.outer(phi, phi), 2, 2)
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]) / 2
    np.testing.assert_allclose(pt, swap)


def test_bipartite_shape_mismatch():
    with pytest.raises(ContractViolation):
        partial_trace(np.eye(5), 2, 3)
    with pytest.raises(ContractViolation):
        partial_trace(np.eye(6), 2, 3, which=2)


def test_haar_unitary_is_unitary(rng):
    assert is_unitary(haar_unitary(4, rng))


def test_majorization():
    assert majorizes([1, 0, 0], [0.5, 0.3, 0.2])
    assert majorizes([0.5, 0.5], [0.5, 0.5])
    assert not majorizes([0.4, 0.4, 0.2], [0.5, 0.3, 0.2])


def test_spectra_distance_sorts_first():
    assert spectra_distance([1, 2, 3], [3, 1, 2]) == 0.0
    with pytest.raises(ContractViolation):
        spectra_distance([1], [1, 2])
