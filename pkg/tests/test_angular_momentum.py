import itertools
import math

import numpy as np
import pytest
from sympy import S
from sympy.physics.quantum.cg import CG

from src.angular_momentum import (
    basis_state,
    clebsch_gordan,
    ladder,
    polarization_basis,
    polarization_operator,
    rotation_matrix,
    rotation_unitary,
    spin_operators,
)
from src.errors import ContractViolation
from src.linalg_core import is_unitary, max_abs, random_unit_vector3
from src.models.spin import TwoJ

TWO_J = [1, 2, 3, 4, 5, 6, 7, 8]


def _commutator(A, B):
    return A @ B - B @ A


@pytest.mark.parametrize("two_j", TWO_J)
def test_commutation_relations(two_j):
    Jx, Jy, Jz = spin_operators(two_j)
    assert max_abs(_commutator(Jx, Jy) - 1j * Jz) <= 1e-12
    assert max_abs(_commutator(Jy, Jz) - 1j * Jx) <= 1e-12
    assert max_abs(_commutator(Jz, Jx) - 1j * Jy) <= 1e-12


@pytest.mark.parametrize("two_j", TWO_J)
def test_casimir(two_j):
    j = TwoJ(two_j)
    spins = spin_operators(j)
    total = sum(J @ J for J in spins)
    assert max_abs(total - float(j.casimir) * np.eye(j.dim)) <= 1e-12


@pytest.mark.parametrize("two_j", TWO_J)
def test_trace_orthogonality(two_j):
    j = TwoJ(two_j)
    spins = spin_operators(j)
    norm = float(j.casimir) * j.dim / 3
    for a, b in itertools.product(range(3), repeat=2):
        expected = norm if a == b else 0.0
        assert abs(np.trace(spins[a] @ spins[b]) - expected) <= 1e-10


def test_spin_half_is_pauli_over_two():
    Jx, Jy, Jz = spin_operators(1)
    np.testing.assert_allclose(Jx, [[0, 0.5], [0.5, 0]])
    np.testing.assert_allclose(Jy, [[0, -0.5j], [0.5j, 0]])
    np.testing.assert_allclose(Jz, [[0.5, 0], [0, -0.5]])


def test_ladder_raises_m():
    J_plus = ladder(2)
    np.testing.assert_allclose(J_plus @ basis_state(2, 0), math.sqrt(2) * basis_state(2, 2))
    np.testing.assert_allclose(J_plus @ basis_state(2, 2), np.zeros(3))


def test_channel_spin_required():
    with pytest.raises(ContractViolation):
        spin_operators(0)
    with pytest.raises(ContractViolation):
        ladder(2, sign=0)


@pytest.mark.parametrize("two_j1,two_j2", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 4)])
def test_clebsch_gordan_against_sympy(two_j1, two_j2):
    for two_J in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2):
        for two_m1 in range(-two_j1, two_j1 + 1, 2):
            for two_m2 in range(-two_j2, two_j2 + 1, 2):
                two_M = two_m1 + two_m2
                if abs(two_M) > two_J:
                    continue
                expected = float(CG(S(two_j1) / 2, S(two_m1) / 2, S(two_j2) / 2, S(two_m2) / 2,
                                    S(two_J) / 2, S(two_M) / 2).doit())
                actual = clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_J, two_M)
                assert math.isclose(actual, expected, abs_tol=1e-12)


@pytest.mark.parametrize("two_j1,two_j2", [(1, 1), (1, 2), (2, 2), (3, 4), (4, 4)])
def test_clebsch_gordan_orthogonality(two_j1, two_j2):
    couplings = [(two_J, two_M)
                 for two_J in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2)
                 for two_M in range(-two_J, two_J + 1, 2)]
    for (two_J, two_M), (two_Jp, two_Mp) in itertools.product(couplings, repeat=2):
        total = sum(clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_J, two_M)
                    * clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_Jp, two_Mp)
                    for two_m1 in range(-two_j1, two_j1 + 1, 2)
                    for two_m2 in range(-two_j2, two_j2 + 1, 2))
        expected = 1.0 if (two_J, two_M) == (two_Jp, two_Mp) else 0.0
        assert abs(total - expected) <= 1e-12


def test_clebsch_gordan_selection_rules():
    assert clebsch_gordan(2, 2, 2, 0, 4, 0) == 0.0
    assert clebsch_gordan(2, 2, 2, 2, 8, 4) == 0.0
    with pytest.raises(ContractViolation):
        clebsch_gordan(1, 0, 1, 1, 2, 1)


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
def test_polarization_basis_orthonormal(two_j):
    basis = polarization_basis(two_j)
    keys = list(basis)
    assert len(keys) == (two_j + 1) ** 2
    for a, b in itertools.product(keys, repeat=2):
        inner = np.trace(basis[a].conj().T @ basis[b])
        assert abs(inner - (1.0 if a == b else 0.0)) <= 1e-12


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
def test_polarization_conjugation_symmetry(two_j):
    for L in range(two_j + 1):
        for M in range(-L, L + 1):
            T = polarization_operator(two_j, L, M)
            partner = polarization_operator(two_j, L, -M)
            assert max_abs(T.conj().T - (-1) ** M * partner) <= 1e-12


@pytest.mark.parametrize("two_j", [1, 2, 3, 5])
def test_ladder_operators_are_rank_one_tensors(two_j):
    j = TwoJ(two_j)
    spins = spin_operators(j)
    scale = math.sqrt(2 * float(j.casimir) * j.dim / 3)
    assert max_abs(spins.plus + scale * polarization_operator(j, 1, 1)) <= 1e-12
    assert max_abs(spins.minus - scale * polarization_operator(j, 1, -1)) <= 1e-12


@pytest.mark.parametrize("two_j", [1, 2, 3, 4, 5, 6])
def test_jz_is_rank_one_zero_component(two_j):
    j = TwoJ(two_j)
    scale = math.sqrt(float(j.casimir) * j.dim / 3)
    assert max_abs(spin_operators(j).Jz - scale * polarization_operator(j, 1, 0)) <= 1e-12


def test_polarization_scalar_is_identity():
    T = polarization_operator(3, 0, 0)
    np.testing.assert_allclose(T, np.eye(4) / 2, atol=1e-12)


def test_polarization_index_checks():
    with pytest.raises(ContractViolation):
        polarization_operator(2, 3, 0)
    with pytest.raises(ContractViolation):
        polarization_operator(2, 1, 2)


@pytest.mark.parametrize("two_j", [1, 2, 3])
def test_rotation_matches_vector_rotation(two_j, rng):
    spins = spin_operators(two_j)
    for _ in range(10):
        n = random_unit_vector3(rng)
        theta = float(rng.uniform(0, 2 * np.pi))
        U = rotation_unitary(two_j, n, theta)
        R = rotation_matrix(n, theta)
        assert is_unitary(U)
        np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-12)
        for alpha in range(3):
            rotated = U.conj().T @ spins[alpha] @ U
            expected = sum(R[alpha, beta] * spins[beta] for beta in range(3))
            assert max_abs(rotated - expected) <= 1e-10


def test_full_turn_is_minus_identity_for_half_integer_spin():
    U = rotation_unitary(1, [0, 0, 1], 2 * np.pi)
    np.testing.assert_allclose(U, -np.eye(2), atol=1e-12)


def test_rotation_axis_must_be_unit():
    with pytest.raises(ContractViolation):
        rotation_unitary(2, [1, 1, 0], 0.3)
