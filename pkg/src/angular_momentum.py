"""
Spin-j operators, Clebsch–Gordan coefficients and polarization operators.

Half-integers are carried as doubled integers (2j, 2m) throughout; floats
appear only in matrix entries. Basis order is m = j, j-1, ..., -j and the
Condon–Shortley phase convention is used.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from src.errors import ContractViolation, require
from src.linalg_core import eig_hermitian
from src.models.spin import SpinTriple, TwoJ

logger = logging.getLogger(__name__)

SpinLike = Union[TwoJ, int]

PLUS = +1
MINUS = -1


# ------------------------------------------------------------------------------
# Spin operators
# ------------------------------------------------------------------------------
def ladder(j: SpinLike, sign: int = PLUS) -> np.ndarray:
    """J+ (sign=+1) or J- (sign=-1) with entries sqrt((j∓m)(j±m+1))"""
    j = TwoJ.of(j).require_channel()
    require(sign in (PLUS, MINUS), f"ladder sign must be +1 or -1, got {sign}")
    d = j.dim
    J_plus = np.zeros((d, d), dtype=np.complex128)
    # J+ |j,m> lands on |j,m+1>, one index up in the descending basis
    for i, two_m in enumerate(j.two_m_values):
        if i == 0:
            continue
        J_plus[i - 1, i] = math.sqrt((j.two_j - two_m) * (j.two_j + two_m + 2)) / 2
    return J_plus if sign == PLUS else J_plus.T.copy()


@lru_cache(maxsize=64)
def _spin_operators_cached(two_j: int) -> SpinTriple:
    j = TwoJ(two_j)
    J_plus = ladder(j, PLUS)
    J_minus = ladder(j, MINUS)
    Jx = (J_plus + J_minus) / 2
    Jy = (J_plus - J_minus) / (2 * 1j)
    Jz = np.diag(j.m_values).astype(np.complex128)
    return SpinTriple(two_j=j, Jx=Jx, Jy=Jy, Jz=Jz)


def spin_operators(j: SpinLike) -> SpinTriple:
    j = TwoJ.of(j).require_channel()
    return _spin_operators_cached(j.two_j)


def spin_projection(j: SpinLike, n) -> np.ndarray:
    return spin_operators(j).projection(n)


def basis_state(j: SpinLike, two_m: int) -> np.ndarray:
    """|j,m> as a column vector, m passed doubled"""
    j = TwoJ.of(j)
    ket = np.zeros(j.dim, dtype=np.complex128)
    ket[j.index_of(two_m)] = 1.0
    return ket


def basis_dyad(j: SpinLike, two_m: int, two_m_prime: int) -> np.ndarray:
    """|j,m><j,m'|"""
    return np.outer(basis_state(j, two_m), basis_state(j, two_m_prime).conj())


# ------------------------------------------------------------------------------
# Rotations
# ------------------------------------------------------------------------------
def _unit_axis(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    require(n.shape == (3,), f"rotation axis must be a 3-vector, got shape {n.shape}")
    norm = np.linalg.norm(n)
    require(abs(norm - 1.0) <= 1e-10, f"rotation axis must have unit length, got {norm:.12f}")
    return n


def rotation_unitary(j: SpinLike, axis, angle: float) -> np.ndarray:
    """U_g = exp(-i θ n·J) from the spectral decomposition of n·J"""
    n = _unit_axis(axis)
    spectrum, V = eig_hermitian(spin_projection(j, n))
    return (V * np.exp(-1j * angle * spectrum.values)) @ V.conj().T


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Orthogonal 3x3 rotation about `axis` by `angle` (Rodrigues)"""
    n = _unit_axis(axis)
    K = np.array([[0.0, -n[2], n[1]],
                  [n[2], 0.0, -n[0]],
                  [-n[1], n[0], 0.0]])
    return np.eye(3) * math.cos(angle) + math.sin(angle) * K + (1 - math.cos(angle)) * np.outer(n, n)


# ------------------------------------------------------------------------------
# Clebsch–Gordan coefficients
# ------------------------------------------------------------------------------
def _half(two_x: int) -> int:
    return two_x // 2


def _check_pair(two_j: int, two_m: int, name: str) -> None:
    for value in (two_j, two_m):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ContractViolation(f"{name}: doubled quantum numbers must be integers, got {value!r}")
    if two_j < 0:
        raise ContractViolation(f"{name}: j must be non-negative, got 2j = {two_j}")
    if (two_j - two_m) % 2:
        raise ContractViolation(f"{name}: j and m must both be integer or both half-integer "
                                f"(2j = {two_j}, 2m = {two_m})")


@lru_cache(maxsize=65536)
def clebsch_gordan(two_j1: int, two_m1: int, two_j2: int, two_m2: int, two_J: int, two_M: int) -> float:
    """<j1 m1; j2 m2 | J M> from the Racah sum, all arguments doubled"""
    _check_pair(two_j1, two_m1, "j1, m1")
    _check_pair(two_j2, two_m2, "j2, m2")
    _check_pair(two_J, two_M, "J, M")

    if two_m1 + two_m2 != two_M:
        return 0.0
    if abs(two_m1) > two_j1 or abs(two_m2) > two_j2 or abs(two_M) > two_J:
        return 0.0
    if two_J < abs(two_j1 - two_j2) or two_J > two_j1 + two_j2 or (two_j1 + two_j2 + two_J) % 2:
        return 0.0

    f = math.factorial
    a = _half(two_j1 + two_j2 - two_J)       # j1 + j2 - J
    b = _half(two_j1 - two_m1)               # j1 - m1
    c = _half(two_j2 + two_m2)               # j2 + m2
    e = _half(two_J - two_j2 + two_m1)       # J - j2 + m1
    g = _half(two_J - two_j1 - two_m2)       # J - j1 - m2

    prefactor = Fraction(
        (two_J + 1)
        * f(_half(two_J + two_j1 - two_j2))
        * f(_half(two_J - two_j1 + two_j2))
        * f(a),
        f(_half(two_j1 + two_j2 + two_J) + 1),
    )
    prefactor *= (
        f(_half(two_J + two_M)) * f(_half(two_J - two_M))
        * f(b) * f(_half(two_j1 + two_m1))
        * f(_half(two_j2 - two_m2)) * f(c)
    )

    total = Fraction(0)
    for k in range(max(0, -e, -g), min(a, b, c) + 1):
        total += Fraction((-1) ** k, f(k) * f(a - k) * f(b - k) * f(c - k) * f(e + k) * f(g + k))

    if total == 0:
        return 0.0
    magnitude = math.sqrt(prefactor * total * total)
    return magnitude if total > 0 else -magnitude


# ------------------------------------------------------------------------------
# Polarization operators
# ------------------------------------------------------------------------------
def polarization_operator(j: SpinLike, L: int, M: int) -> np.ndarray:
    """T_LM = sum (-1)^(j-m1) C^{LM}_{j m2 j -m1} |j m2><j m1|"""
    j = TwoJ.of(j).require_channel()
    if not (0 <= L <= j.two_j):
        raise ContractViolation(f"L must lie in 0..2j = 0..{j.two_j}, got {L}")
    if abs(M) > L:
        raise ContractViolation(f"|M| must not exceed L = {L}, got {M}")

    T = np.zeros((j.dim, j.dim), dtype=np.complex128)
    for col, two_m1 in enumerate(j.two_m_values):
        phase = -1.0 if _half(j.two_j - two_m1) % 2 else 1.0
        for row, two_m2 in enumerate(j.two_m_values):
            coefficient = clebsch_gordan(j.two_j, two_m2, j.two_j, -two_m1, 2 * L, 2 * M)
            if coefficient:
                T[row, col] = phase * coefficient
    return T


def polarization_basis(j: SpinLike):
    """All (2j+1)^2 operators T_LM keyed by (L, M)"""
    j = TwoJ.of(j).require_channel()
    return {
        (L, M): polarization_operator(j, L, M)
        for L in range(j.two_j + 1)
        for M in range(-L, L + 1)
    }
