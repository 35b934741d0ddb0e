"""
Dense complex linear algebra used by every analysis in the package.

Matrices are plain complex128 numpy arrays in row-major order. All spectral
work goes through one Hermitian eigensolver; the only non-Hermitian
eigenproblem (the superoperator spectrum) lives in spectral_analysis.
"""
from __future__ import annotations

import logging
from typing import Tuple

import numpy as np
from scipy import linalg as sla

from src.errors import ContractViolation, require
from src.models.spectrum import Spectrum

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Tolerances
# ------------------------------------------------------------------------------
HERMITIAN_TOL = 1e-12
TOL_CLOSED = 1e-10
TOL_OPTIMIZER = 1e-6
DENSITY_TOL = 1e-10

SUBSYSTEM_A = 0
SUBSYSTEM_B = 1


# ------------------------------------------------------------------------------
# Predicates
# ------------------------------------------------------------------------------
def as_matrix(M) -> np.ndarray:
    return np.asarray(M, dtype=np.complex128)


def is_square(M: np.ndarray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1]


def hermiticity_residual(M: np.ndarray) -> float:
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M - M.conj().T)))


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    M = as_matrix(M)
    return is_square(M) and hermiticity_residual(M) <= tol


def is_unitary(U, tol: float = TOL_CLOSED) -> bool:
    U = as_matrix(U)
    if not is_square(U):
        return False
    return max_abs(U.conj().T @ U - np.eye(U.shape[0])) <= tol


def hermitian_part(M) -> np.ndarray:
    M = as_matrix(M)
    return (M + M.conj().T) / 2


def max_abs(M) -> float:
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


# ------------------------------------------------------------------------------
# Spectral decomposition
# ------------------------------------------------------------------------------
def eig_hermitian(H, tol: float = HERMITIAN_TOL) -> Tuple[Spectrum, np.ndarray]:
    """Eigenvalues sorted descending and the matching unitary of column eigenvectors."""
    H = as_matrix(H)
    require(is_square(H), f"expected a square matrix, got shape {H.shape}")
    residual = hermiticity_residual(H)
    require(residual <= tol, f"matrix is not Hermitian (residual {residual:.3e} > {tol:.1e})")

    values, vectors = sla.eigh(hermitian_part(H))
    order = np.argsort(values)[::-1]
    return Spectrum(values[order]), vectors[:, order]


def eigvals_hermitian(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    spectrum, _ = eig_hermitian(H, tol)
    return spectrum.values


def hermitian_function(H, func, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its eigendecomposition"""
    spectrum, U = eig_hermitian(H, tol)
    return (U * func(spectrum.values)) @ U.conj().T


# ------------------------------------------------------------------------------
# Norms and entropies
# ------------------------------------------------------------------------------
def check_schatten_index(p) -> float:
    p = float(p)
    if np.isnan(p) or p < 1:
        raise ContractViolation(f"Schatten index must satisfy p >= 1, got {p}")
    return p


def schatten_norm(A, p=2.0) -> float:
    p = check_schatten_index(p)
    A = as_matrix(A)
    if is_hermitian(A):
        s = np.abs(sla.eigvalsh(hermitian_part(A)))
    else:
        s = sla.svdvals(A)
    return norm_of_values(s, p)


def norm_of_values(values, p) -> float:
    """(sum |x|^p)^(1/p) over a list of values, max |x| for p = inf"""
    p = check_schatten_index(p)
    s = np.abs(np.asarray(values, dtype=float))
    if s.size == 0:
        return 0.0
    if np.isinf(p):
        return float(np.max(s))
    # scale by the largest value so large p does not underflow
    top = float(np.max(s))
    if top == 0.0:
        return 0.0
    return top * float(np.sum((s / top) ** p) ** (1.0 / p))


def clamp_probabilities(values, tol: float = DENSITY_TOL) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -tol:
        raise ContractViolation(f"negative eigenvalue {values.min():.3e} beyond tolerance {tol:.1e}")
    return np.clip(values, 0.0, None)


def shannon_entropy(values, base: float = 2.0) -> float:
    """-sum x log x with 0 log 0 := 0"""
    x = np.asarray(values, dtype=float)
    x = x[x > 0]
    if x.size == 0:
        return 0.0
    return float(-np.sum(x * np.log(x)) / np.log(base))


def von_neumann_entropy(rho, base: float = 2.0, tol: float = DENSITY_TOL) -> float:
    """Von Neumann entropy in bits by default; pass base=e for nats"""
    values = density_spectrum(rho, tol)
    return shannon_entropy(values, base)


def density_spectrum(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    rho = as_matrix(rho)
    require(is_square(rho), f"density operator must be square, got shape {rho.shape}")
    require(hermiticity_residual(rho) <= max(tol, HERMITIAN_TOL),
            "density operator is not Hermitian")
    trace = np.trace(rho).real
    require(abs(trace - 1.0) <= tol, f"density operator has trace {trace:.12f}, expected 1")
    return clamp_probabilities(sla.eigvalsh(hermitian_part(rho)), tol)


def validate_density(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    density_spectrum(rho, tol)
    return as_matrix(rho)


def purity(rho) -> float:
    rho = as_matrix(rho)
    return float(np.real(np.trace(rho @ rho)))


# ------------------------------------------------------------------------------
# Tensor products, partial trace, partial transpose
# ------------------------------------------------------------------------------
def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def _bipartite(M, dimA: int, dimB: int) -> np.ndarray:
    M = as_matrix(M)
    n = dimA * dimB
    require(dimA >= 1 and dimB >= 1, f"subsystem dimensions must be positive, got {dimA}, {dimB}")
    require(M.shape == (n, n), f"expected a {n}x{n} matrix for dims ({dimA}, {dimB}), got {M.shape}")
    return M.reshape(dimA, dimB, dimA, dimB)


def _check_which(which: int) -> None:
    require(which in (SUBSYSTEM_A, SUBSYSTEM_B), f"subsystem index must be 0 or 1, got {which}")


def partial_trace(M, dimA: int, dimB: int, which: int = SUBSYSTEM_B) -> np.ndarray:
    """Trace out subsystem `which` (0 = A, 1 = B) of an operator on A ⊗ B"""
    _check_which(which)
    T = _bipartite(M, dimA, dimB)
    if which == SUBSYSTEM_B:
        return np.einsum("ibjb->ij", T)
    return np.einsum("aiaj->ij", T)


def partial_transpose(M, dimA: int, dimB: int, which: int = SUBSYSTEM_B) -> np.ndarray:
    _check_which(which)
    T = _bipartite(M, dimA, dimB)
    if which == SUBSYSTEM_B:
        T = T.transpose(0, 3, 2, 1)
    else:
        T = T.transpose(2, 1, 0, 3)
    return T.reshape(dimA * dimB, dimA * dimB)


# ------------------------------------------------------------------------------
# Random sampling (seeded)
# ------------------------------------------------------------------------------
def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a complex Ginibre matrix with the diagonal phases of R removed"""
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_density(d: int, rng: np.random.Generator, rank: int = None) -> np.ndarray:
    rank = d if rank is None else rank
    G = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = G @ G.conj().T
    return hermitian_part(rho / np.trace(rho).real)


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return hermitian_part(A)


def random_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_unit_vector3(rng: np.random.Generator) -> np.ndarray:
    n = rng.standard_normal(3)
    return n / np.linalg.norm(n)


# ------------------------------------------------------------------------------
# Spectrum comparison
# ------------------------------------------------------------------------------
def spectra_distance(a, b) -> float:
    """Max pointwise distance between two multisets after sorting both descending"""
    a = np.sort(np.real_if_close(np.asarray(a, dtype=complex)).real)[::-1]
    b = np.sort(np.real_if_close(np.asarray(b, dtype=complex)).real)[::-1]
    require(a.size == b.size, f"spectra have different sizes {a.size} and {b.size}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def majorizes(a, b, tol: float = TOL_CLOSED) -> bool:
    """True when sorted partial sums of `a` dominate those of `b` and totals agree"""
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    b = np.sort(np.asarray(b, dtype=float))[::-1]
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    ca, cb = np.cumsum(a), np.cumsum(b)
    return bool(np.all(ca[:-1] >= cb[:-1] - tol) and abs(ca[-1] - cb[-1]) <= tol)
