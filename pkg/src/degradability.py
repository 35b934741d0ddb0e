"""
Factoring maps between a channel and its complement, Choi ranks, and the
degradability table of the Landau–Streater family.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Any, Optional, Tuple, Union

import numpy as np
from scipy import linalg as sla

from src.angular_momentum import polarization_basis, spin_operators
from src.channel_core import (
    apply,
    choi,
    complementary,
    landau_streater,
    ls_wh_unitary,
    superoperator,
    superoperator_to_choi,
    werner_holevo,
)
from src.errors import ContractViolation, require
from src.linalg_core import (
    SUBSYSTEM_B,
    hermitian_part,
    max_abs,
    partial_transpose,
    random_matrix,
)
from src.models.channel import ChoiMatrix, KrausChannel, SuperOperator
from src.models.reports import DegradabilityVerdict
from src.models.spin import TwoJ
from src.spectral_analysis import ls_spectrum_closed

logger = logging.getLogger(__name__)

SpinLike = Union[TwoJ, int]

PINV_ATOL = 1e-9
RANK_TOL = 1e-9
FACTORING_TOL = 1e-8


# ------------------------------------------------------------------------------
# Factoring maps
# ------------------------------------------------------------------------------
def factoring_map(A: KrausChannel, B: KrausChannel) -> Tuple[SuperOperator, float]:
    """Least-squares T with T ∘ A ≈ B, using the pseudo-inverse of A's superoperator"""
    if A.d_in != B.d_in:
        raise ContractViolation(f"channels must share the input dimension, got {A.d_in} and {B.d_in}")
    S_A = superoperator(A).matrix
    S_B = superoperator(B).matrix
    singular = sla.svdvals(S_A)
    truncated = int(np.sum(singular <= PINV_ATOL))
    if truncated:
        logger.debug("factoring map: %d singular values of %s below %.0e truncated",
                     truncated, A.name, PINV_ATOL)
    T = S_B @ sla.pinv(S_A, atol=PINV_ATOL, rtol=0.0)
    residual = float(np.linalg.norm(T @ S_A - S_B))
    meta = {'residual': residual, 'truncated_singular_values': truncated}
    return SuperOperator(T, d_in=A.d_out, d_out=B.d_out, metadata=meta), residual


def factoring_choi(A: KrausChannel, B: KrausChannel) -> Tuple[ChoiMatrix, float]:
    T, residual = factoring_map(A, B)
    return superoperator_to_choi(T), residual


def choi_min_eigenvalue(omega: ChoiMatrix) -> float:
    return float(sla.eigvalsh(hermitian_part(omega.matrix)).min())


def choi_rank(ch: Union[KrausChannel, ChoiMatrix], tol: float = RANK_TOL) -> int:
    omega = ch if isinstance(ch, ChoiMatrix) else choi(ch)
    values = sla.eigvalsh(hermitian_part(omega.matrix))
    return int(np.sum(values > tol))


def numeric_degradability(ch: KrausChannel, tol: float = FACTORING_TOL) -> DegradabilityVerdict:
    """Decide both properties from the factoring maps Φ̃∘Φ⁻¹ and Φ∘Φ̃⁻¹"""
    require(ch.is_square, "numeric degradability needs a square channel")
    env = complementary(ch)
    forward, forward_residual = factoring_choi(ch, env)
    backward, backward_residual = factoring_choi(env, ch)
    forward_min = choi_min_eigenvalue(forward)
    backward_min = choi_min_eigenvalue(backward)
    certificates = {
        'degrading_map_residual': forward_residual,
        'degrading_map_choi_min': forward_min,
        'antidegrading_map_residual': backward_residual,
        'antidegrading_map_choi_min': backward_min,
    }
    return DegradabilityVerdict(
        two_j=None,
        degradable=forward_residual <= tol and forward_min >= -tol,
        antidegradable=backward_residual <= tol and backward_min >= -tol,
        certificates=certificates,
    )


# ------------------------------------------------------------------------------
# Inverse of the Landau–Streater map
# ------------------------------------------------------------------------------
def ls_invertible(j: SpinLike) -> bool:
    return all(lam != 0 for lam, _ in ls_spectrum_closed(j).pairs)


def ls_inverse_superoperator(j: SpinLike) -> SuperOperator:
    """Φ⁻¹ = sum_LM λ_L⁻¹ |T_LM>><<T_LM| in the polarization-operator eigenbasis"""
    j = TwoJ.of(j).require_channel()
    if not ls_invertible(j):
        raise ContractViolation(f"the map for j = {j.label} has a zero eigenvalue and no inverse")
    lambdas = {L: float(lam) for L, (lam, _) in enumerate(ls_spectrum_closed(j).pairs)}
    S = np.zeros((j.dim ** 2, j.dim ** 2), dtype=np.complex128)
    for (L, _M), T in polarization_basis(j).items():
        v = T.reshape(-1)
        S += np.outer(v, v.conj()) / lambdas[L]
    return SuperOperator(S, d_in=j.dim, d_out=j.dim)


def phi_inverse_on_jz2(j: SpinLike) -> np.ndarray:
    """Φ⁻¹[Jz²] = j(j+1)/(j(j+1) - 3) · (Jz² - I)"""
    j = TwoJ.of(j).require_channel()
    c = j.casimir
    Jz = spin_operators(j).Jz
    return float(c / (c - 3)) * (Jz @ Jz - np.eye(j.dim))


def degradability_diag_element(j: SpinLike, two_m: int) -> Fraction:
    """<z, m| Ω_T |z, m> = (m² - 1) / ((2j+1)(j² + j - 3)) for T = Φ̃∘Φ⁻¹"""
    j = TwoJ.of(j)
    if j.two_j < 3:
        raise ContractViolation(f"the closed form needs j >= 3/2, got j = {j.label}")
    j.index_of(two_m)
    m = Fraction(two_m, 2)
    return (m * m - 1) / (j.dim * (j.casimir - 3))


def negative_projection(j: SpinLike) -> int:
    """2m of the level whose diagonal element is negative: m = 1/2 or m = 0"""
    return TwoJ.of(j).two_j % 2


def qubit_factoring_choi_reference() -> np.ndarray:
    """Ω_T for j = 1/2 in closed form, on C³ ⊗ C²"""
    i = 1j
    return np.array([
        [1, 0, 3 * i, 0, 0, 3],
        [0, 1, 0, -3 * i, -3, 0],
        [-3 * i, 0, 1, 0, 0, 3 * i],
        [0, 3 * i, 0, 1, 3 * i, 0],
        [0, -3, 0, -3 * i, 1, 0],
        [3, 0, -3 * i, 0, 0, 1],
    ], dtype=np.complex128) / 6


def numeric_diag_element(j: SpinLike, two_m: int, alpha: int = 2) -> float:
    j = TwoJ.of(j).require_channel()
    ch = landau_streater(j)
    omega, _ = factoring_choi(ch, complementary(ch))
    index = alpha * j.dim + j.index_of(two_m)
    return float(omega.matrix[index, index].real)


# ------------------------------------------------------------------------------
# Verdicts for the Landau–Streater family
# ------------------------------------------------------------------------------
def _qubit_certificates(ch: KrausChannel) -> Dict[str, Any]:
    omega = choi(ch)
    pt_min = float(sla.eigvalsh(hermitian_part(partial_transpose(omega.matrix, 2, 2, SUBSYSTEM_B))).min())
    forward, _ = factoring_choi(ch, complementary(ch))
    return {
        'depolarizing_parameter': -1 / 3,
        'choi_pt_min_eigenvalue': pt_min,
        'entanglement_breaking': pt_min >= -1e-10,
        'degrading_map_choi_min': choi_min_eigenvalue(forward),
    }


def _qutrit_certificates(ch: KrausChannel, rng: np.random.Generator) -> Dict[str, Any]:
    wh = werner_holevo(3)
    W = ls_wh_unitary()
    residual = 0.0
    for _ in range(20):
        X = random_matrix(3, rng)
        residual = max(residual, max_abs(apply(ch, X) - apply(wh, W @ X @ W.conj().T)))
    numeric = numeric_degradability(ch)
    return {'werner_holevo_residual': residual, **numeric.certificates}


def _large_spin_certificates(j: TwoJ, ch: KrausChannel) -> Dict[str, Any]:
    two_m = negative_projection(j)
    closed = degradability_diag_element(j, two_m)
    certificates = {
        'complementary_choi_rank': choi_rank(complementary(ch)),
        'diag_element_m': str(Fraction(two_m, 2)),
        'diag_element_closed': float(closed),
        'diag_element_exact': str(closed),
        'phi_invertible': ls_invertible(j),
    }
    if ls_invertible(j):
        certificates['diag_element_numeric'] = numeric_diag_element(j, two_m)
    return certificates


def degradability_verdict(j: SpinLike, tol: float = FACTORING_TOL,
                          rng: Optional[np.random.Generator] = None) -> DegradabilityVerdict:
    j = TwoJ.of(j).require_channel()
    rng = np.random.default_rng(0) if rng is None else rng
    ch = landau_streater(j)
    logger.info("degradability for 2j=%d", j.two_j)

    if j.two_j == 1:
        certificates = _qubit_certificates(ch)
        return DegradabilityVerdict(
            two_j=j.two_j,
            degradable=certificates['degrading_map_choi_min'] >= -tol,
            antidegradable=certificates['entanglement_breaking'],
            certificates=certificates,
        )
    if j.two_j == 2:
        certificates = _qutrit_certificates(ch, rng)
        return DegradabilityVerdict(
            two_j=j.two_j,
            degradable=certificates['degrading_map_choi_min'] >= -tol,
            antidegradable=certificates['antidegrading_map_choi_min'] >= -tol,
            certificates=certificates,
        )

    certificates = _large_spin_certificates(j, ch)
    return DegradabilityVerdict(
        two_j=j.two_j,
        degradable=certificates['diag_element_closed'] >= 0,
        antidegradable=certificates['complementary_choi_rank'] <= 3,
        certificates=certificates,
    )


def is_degradable(j: SpinLike, tol: float = FACTORING_TOL) -> DegradabilityVerdict:
    return degradability_verdict(j, tol)


def is_antidegradable(j: SpinLike, tol: float = FACTORING_TOL) -> DegradabilityVerdict:
    return degradability_verdict(j, tol)
