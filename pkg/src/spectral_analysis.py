"""
Spectrum of the Landau–Streater map, its eigenoperators, output spectra and
covariance properties.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Any, List, Optional, Tuple, Union

import numpy as np

from src.angular_momentum import (
    basis_dyad,
    polarization_operator,
    rotation_matrix,
    rotation_unitary,
    spin_operators,
    spin_projection,
)
from src.channel_core import apply, landau_streater, ls_wh_unitary, superoperator
from src.errors import ContractViolation, ImaginarySpectrumError, require
from src.linalg_core import (
    TOL_CLOSED,
    as_matrix,
    eigvals_hermitian,
    haar_unitary,
    hermitian_part,
    is_unitary,
    max_abs,
    random_hermitian,
    random_unit_vector3,
    spectra_distance,
)
from src.models.channel import KrausChannel
from src.models.spectrum import MapSpectrum, Spectrum
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)

IMAGINARY_TOL = 1e-9

SpinLike = Union[TwoJ, int]


# ------------------------------------------------------------------------------
# Map spectrum
# ------------------------------------------------------------------------------
def ls_lambda(j: SpinLike, L: int) -> Fraction:
    """λ_L = 1 - L(L+1) / (2 j(j+1))"""
    j = TwoJ.of(j).require_channel()
    require(0 <= L <= j.two_j, f"L must lie in 0..{j.two_j}, got {L}")
    return 1 - Fraction(L * (L + 1)) / (2 * j.casimir)


def ls_spectrum_closed(j: SpinLike) -> MapSpectrum:
    j = TwoJ.of(j).require_channel()
    pairs = tuple((ls_lambda(j, L), 2 * L + 1) for L in range(j.two_j + 1))
    return MapSpectrum(two_j=j.two_j, pairs=pairs)


def superoperator_eigenvalues(ch: KrausChannel) -> np.ndarray:
    require(ch.is_square, f"map spectrum needs a square channel, got {ch.d_out}x{ch.d_in}")
    return np.linalg.eigvals(superoperator(ch).matrix)


def imaginary_residue(values) -> float:
    values = np.asarray(values)
    return float(np.max(np.abs(values.imag))) if values.size else 0.0


def map_spectrum_numeric(ch: KrausChannel, tol: float = IMAGINARY_TOL, strict: bool = True) -> Spectrum:
    """Eigenvalues of the superoperator, which are real for Hermitian self-dual maps"""
    values = superoperator_eigenvalues(ch)
    residue = imaginary_residue(values)
    if residue > tol:
        if strict:
            raise ImaginarySpectrumError(residue, tol)
        logger.warning("%s: map spectrum has imaginary residue %.3e", ch.name, residue)
    return Spectrum(values.real)


def determinant(ch: KrausChannel) -> float:
    return float(np.real(np.prod(superoperator_eigenvalues(ch))))


def determinant_closed(j: SpinLike) -> Fraction:
    result = Fraction(1)
    for lam, mult in ls_spectrum_closed(j).pairs:
        result *= lam ** mult
    return result


def verify_eigenoperators(j: SpinLike, rng: Optional[np.random.Generator] = None) -> List[Dict[str, Any]]:
    """‖Φ[T_L0] - λ_L T_L0‖ for every L, plus the same for U_g T_L0 U_g† at a random rotation"""
    j = TwoJ.of(j).require_channel()
    rng = np.random.default_rng(0) if rng is None else rng
    ch = landau_streater(j)
    U = rotation_unitary(j, random_unit_vector3(rng), float(rng.uniform(0, 2 * np.pi)))
    rows = []
    for L in range(j.two_j + 1):
        lam = ls_lambda(j, L)
        T = polarization_operator(j, L, 0)
        rotated = U @ T @ U.conj().T
        rows.append({
            'L': L,
            'lambda_L': float(lam),
            'residual': max_abs(apply(ch, T) - float(lam) * T),
            'rotated_residual': max_abs(apply(ch, rotated) - float(lam) * rotated),
        })
    return rows


def markov_markers(j: SpinLike) -> Dict[str, Any]:
    """Signs that rule out Markovian or positive-divisible realisations of Φ"""
    spectrum = ls_spectrum_closed(j)
    det = determinant_closed(j)
    lambda_top = spectrum.pairs[-1][0]
    return {
        'determinant': float(det),
        'determinant_exact': str(det),
        'determinant_negative': det < 0,
        'lambda_top': float(lambda_top),
        'lambda_top_negative': lambda_top < 0,
    }


# ------------------------------------------------------------------------------
# Output spectra
# ------------------------------------------------------------------------------
def output_spectrum_jm(j: SpinLike, two_m: int) -> Spectrum:
    """Spec Φ[|j,m><j,m|] from the closed form, m passed doubled"""
    j = TwoJ.of(j).require_channel()
    j.index_of(two_m)
    c = j.casimir
    m = Fraction(two_m, 2)
    values = [
        (c - m * (m + 1)) / (2 * c),
        (c - m * (m - 1)) / (2 * c),
        m * m / c,
    ]
    values = sorted((float(v) for v in values), reverse=True)
    values += [0.0] * max(0, j.dim - len(values))
    # for j = 1/2 one of the three terms is the weight of a missing level and vanishes
    return Spectrum(values[:j.dim])


def output_spectrum_qutrit(x1: float, x2: float, x3: float) -> Spectrum:
    return Spectrum([(x1 + x2) / 2, (x1 + x3) / 2, (x2 + x3) / 2])


def output_spectrum_qubit(x1: float, x2: float) -> Spectrum:
    return Spectrum([(x1 + 2 * x2) / 3, (2 * x1 + x2) / 3])


def quadrupole_eigenoperator(n) -> Tuple[np.ndarray, float]:
    """3(n·J)² - 2I for j = 1, an eigenoperator of Φ with eigenvalue -1/2"""
    nJ = spin_projection(2, n)
    return 3 * nJ @ nJ - 2 * np.eye(3), float(ls_lambda(2, 2))


# ------------------------------------------------------------------------------
# Covariance
# ------------------------------------------------------------------------------
def check_su2_covariance(j: SpinLike, axis, angle: float, X) -> float:
    ch = landau_streater(j)
    U = rotation_unitary(j, axis, angle)
    X = as_matrix(X)
    return max_abs(apply(ch, U @ X @ U.conj().T) - U @ apply(ch, X) @ U.conj().T)


def rotation_relation_residual(j: SpinLike, axis, angle: float) -> float:
    """max over α of ‖U† J_α U - sum_β Q_αβ J_β‖"""
    U = rotation_unitary(j, axis, angle)
    Q = rotation_matrix(axis, angle)
    spins = spin_operators(j)
    worst = 0.0
    for alpha in range(3):
        lhs = U.conj().T @ spins[alpha] @ U
        rhs = sum(Q[alpha, beta] * spins[beta] for beta in range(3))
        worst = max(worst, max_abs(lhs - rhs))
    return worst


def u3_partner(U, rng: Optional[np.random.Generator] = None, samples: int = 20) -> Tuple[np.ndarray, float]:
    """V with Φ[U X U†] = V Φ[X] V† for j = 1, and the residual over random X"""
    U = as_matrix(U)
    if U.shape != (3, 3) or not is_unitary(U):
        raise ContractViolation("u3_partner needs a 3x3 unitary")
    signs = np.array([1, -1, 1])
    V = np.empty((3, 3), dtype=np.complex128)
    for a in range(3):
        for b in range(3):
            V[a, b] = signs[a] * signs[b] * np.conj(U[2 - a, 2 - b])

    rng = np.random.default_rng(0) if rng is None else rng
    ch = landau_streater(2)
    residual = 0.0
    for _ in range(samples):
        X = random_hermitian(3, rng) + 1j * random_hermitian(3, rng)
        lhs = apply(ch, U @ X @ U.conj().T)
        rhs = V @ apply(ch, X) @ V.conj().T
        residual = max(residual, max_abs(lhs - rhs))
    return V, residual


def wh_partner_identity(U) -> np.ndarray:
    """The same partner written through the Werner–Holevo form: W conj(U) W"""
    W = ls_wh_unitary()
    return W @ np.conj(as_matrix(U)) @ W


def global_covariance_counterexample(j: SpinLike) -> Tuple[Spectrum, Spectrum, bool]:
    """Output spectra of |j,j> and |j,j-1>; unequal exactly when j > 1"""
    j = TwoJ.of(j).require_channel()
    ch = landau_streater(j)
    spec_a = Spectrum(eigvals_hermitian(hermitian_part(apply(ch, basis_dyad(j, j.two_j, j.two_j)))))
    spec_b = Spectrum(eigvals_hermitian(hermitian_part(apply(ch, basis_dyad(j, j.two_j - 2, j.two_j - 2)))))
    equal = spectra_distance(spec_a.values, spec_b.values) <= TOL_CLOSED
    return spec_a, spec_b, equal


def random_covariance_residual(j: SpinLike, samples: int, rng: np.random.Generator) -> float:
    j = TwoJ.of(j).require_channel()
    worst = 0.0
    for _ in range(samples):
        X = random_hermitian(j.dim, rng)
        worst = max(worst, check_su2_covariance(
            j, random_unit_vector3(rng), float(rng.uniform(0, 2 * np.pi)), X))
    return worst


def random_u3_residual(samples: int, rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(samples):
        _, residual = u3_partner(haar_unitary(3, rng), rng, samples=1)
        worst = max(worst, residual)
    return worst
