"""
Channel representations and the Landau–Streater / Werner–Holevo constructors.

Conventions:
  * operators are vectorized row-major, vec(|a><b|) = e_{a*d + b}, so the
    superoperator of a Kraus channel is sum K ⊗ conj(K);
  * Choi matrices live on H_out ⊗ H_in and are normalized by d_in;
  * the Stinespring space is system ⊗ environment, V|ψ> = sum_α K_α|ψ> ⊗ |α>.
"""
from __future__ import annotations

import logging
import math
from typing import Union

import numpy as np
from scipy import linalg as sla

from src.angular_momentum import spin_operators
from src.errors import ContractViolation, NotAChannelError, require
from src.linalg_core import (
    SUBSYSTEM_A,
    SUBSYSTEM_B,
    TOL_CLOSED,
    as_matrix,
    hermitian_part,
    max_abs,
    partial_trace,
)
from src.models.channel import ChoiMatrix, KrausChannel, SuperOperator
from src.models.reports import ChannelCheck
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)

CHOI_RANK_TOL = 1e-9
CHOI_PSD_TOL = 1e-9


# ------------------------------------------------------------------------------
# Constructors
# ------------------------------------------------------------------------------
def landau_streater(j: Union[TwoJ, int]) -> KrausChannel:
    """Φ[ρ] = (Jx ρ Jx + Jy ρ Jy + Jz ρ Jz) / (j(j+1))"""
    j = TwoJ.of(j).require_channel()
    scale = 1.0 / math.sqrt(float(j.casimir))
    ops = tuple(J * scale for J in spin_operators(j))
    return KrausChannel(ops, d_in=j.dim, d_out=j.dim, name=f"landau_streater(2j={j.two_j})", unital=True)


def identity_channel(d: int) -> KrausChannel:
    require(d >= 1, f"dimension must be positive, got {d}")
    return KrausChannel((np.eye(d),), d_in=d, d_out=d, name=f"identity({d})", unital=True)


def werner_holevo(d: int) -> KrausChannel:
    """Φ_WH[X] = (tr X · I - X^T) / (d - 1)"""
    require(d >= 2, f"Werner–Holevo channel needs d >= 2, got {d}")
    scale = 1.0 / math.sqrt(d - 1)
    ops = []
    for a in range(d):
        for b in range(a + 1, d):
            K = np.zeros((d, d), dtype=np.complex128)
            K[a, b] = scale
            K[b, a] = -scale
            ops.append(K)
    return KrausChannel(tuple(ops), d_in=d, d_out=d, name=f"werner_holevo({d})", unital=True)


def ls_wh_unitary() -> np.ndarray:
    """W = |1,1><1,-1| - |1,0><1,0| + |1,-1><1,1| for j = 1"""
    return np.array([[0, 0, 1],
                     [0, -1, 0],
                     [1, 0, 0]], dtype=np.complex128)


def depolarizing(d: int, q: float) -> KrausChannel:
    """ρ -> q ρ + (1 - q) tr ρ · I/d, completely positive for -1/(d²-1) <= q <= 1"""
    require(d >= 2, f"depolarizing channel needs d >= 2, got {d}")
    lower = -1.0 / (d * d - 1)
    if q < lower - 1e-12 or q > 1 + 1e-12:
        raise NotAChannelError(f"depolarizing parameter {q} outside [{lower:.6f}, 1]")
    psi = np.eye(d, dtype=np.complex128).reshape(-1) / math.sqrt(d)
    omega = q * np.outer(psi, psi.conj()) + (1 - q) * np.eye(d * d) / (d * d)
    channel = kraus_from_choi(ChoiMatrix(omega, d_in=d, d_out=d))
    return KrausChannel(channel.kraus_ops, d_in=d, d_out=d, name=f"depolarizing({d}, {q:g})", unital=True)


def transpose_choi(d: int) -> ChoiMatrix:
    """Choi matrix of X -> X^T, which is SWAP/d and not positive"""
    require(d >= 1, f"dimension must be positive, got {d}")
    swap = np.eye(d * d).reshape(d, d, d, d).transpose(0, 1, 3, 2).reshape(d * d, d * d)
    return ChoiMatrix(swap / d, d_in=d, d_out=d)


# ------------------------------------------------------------------------------
# Action
# ------------------------------------------------------------------------------
def _check_input(ch: KrausChannel, X) -> np.ndarray:
    X = as_matrix(X)
    if X.shape != (ch.d_in, ch.d_in):
        raise ContractViolation(f"{ch.name} expects a {ch.d_in}x{ch.d_in} input, got {X.shape}")
    return X


def apply(ch: KrausChannel, X) -> np.ndarray:
    X = _check_input(ch, X)
    out = np.zeros((ch.d_out, ch.d_out), dtype=np.complex128)
    for K in ch.kraus_ops:
        out += K @ X @ K.conj().T
    return out


def ls_ladder_form(j: Union[TwoJ, int], X) -> np.ndarray:
    """Φ[X] written with J±: (J- X J+ / 2 + J+ X J- / 2 + Jz X Jz) / (j(j+1))"""
    j = TwoJ.of(j).require_channel()
    spins = spin_operators(j)
    X = as_matrix(X)
    require(X.shape == (j.dim, j.dim), f"expected a {j.dim}x{j.dim} input, got {X.shape}")
    Jp, Jm, Jz = spins.plus, spins.minus, spins.Jz
    return (Jm @ X @ Jp / 2 + Jp @ X @ Jm / 2 + Jz @ X @ Jz) / float(j.casimir)


def apply_superoperator(S: SuperOperator, X) -> np.ndarray:
    X = as_matrix(X)
    require(X.shape == (S.d_in, S.d_in), f"expected a {S.d_in}x{S.d_in} input, got {X.shape}")
    return (S.matrix @ X.reshape(-1)).reshape(S.d_out, S.d_out)


def apply_choi(omega: ChoiMatrix, X) -> np.ndarray:
    """Φ[X] = d_in · tr_in[Ω (I ⊗ X^T)]"""
    X = as_matrix(X)
    require(X.shape == (omega.d_in, omega.d_in), f"expected a {omega.d_in}x{omega.d_in} input, got {X.shape}")
    T = omega.matrix.reshape(omega.d_out, omega.d_in, omega.d_out, omega.d_in)
    return omega.d_in * np.einsum("aibk,ik->ab", T, X)


# ------------------------------------------------------------------------------
# Representations
# ------------------------------------------------------------------------------
def superoperator(ch: KrausChannel) -> SuperOperator:
    S = sum(np.kron(K, K.conj()) for K in ch.kraus_ops)
    return SuperOperator(S, d_in=ch.d_in, d_out=ch.d_out)


def choi(ch: KrausChannel) -> ChoiMatrix:
    vectors = [K.reshape(-1) for K in ch.kraus_ops]
    omega = sum(np.outer(v, v.conj()) for v in vectors) / ch.d_in
    return ChoiMatrix(omega, d_in=ch.d_in, d_out=ch.d_out)


def superoperator_to_choi(S: SuperOperator) -> ChoiMatrix:
    T = S.matrix.reshape(S.d_out, S.d_out, S.d_in, S.d_in).transpose(0, 2, 1, 3)
    n = S.d_out * S.d_in
    return ChoiMatrix(T.reshape(n, n) / S.d_in, d_in=S.d_in, d_out=S.d_out)


def choi_to_superoperator(omega: ChoiMatrix) -> SuperOperator:
    T = omega.matrix.reshape(omega.d_out, omega.d_in, omega.d_out, omega.d_in).transpose(0, 2, 1, 3)
    S = T.reshape(omega.d_out ** 2, omega.d_in ** 2) * omega.d_in
    return SuperOperator(S, d_in=omega.d_in, d_out=omega.d_out)


def kraus_from_choi(omega: ChoiMatrix, rank_tol: float = CHOI_RANK_TOL,
                    psd_tol: float = CHOI_PSD_TOL) -> KrausChannel:
    """Kraus operators sqrt(d_in λ) · unvec(v) from the eigenpairs of Ω with λ > rank_tol"""
    values, vectors = sla.eigh(hermitian_part(omega.matrix))
    if values.min() < -psd_tol:
        raise NotAChannelError(f"Choi matrix has eigenvalue {values.min():.3e} below -{psd_tol:.0e}")
    ops = []
    for value, vector in sorted(zip(values, vectors.T), key=lambda pair: -pair[0]):
        if value > rank_tol:
            ops.append(math.sqrt(omega.d_in * value) * vector.reshape(omega.d_out, omega.d_in))
    if not ops:
        raise NotAChannelError("Choi matrix has no eigenvalue above the rank tolerance")
    return KrausChannel(tuple(ops), d_in=omega.d_in, d_out=omega.d_out, name="from_choi")


# ------------------------------------------------------------------------------
# Complementary channel and Stinespring dilation
# ------------------------------------------------------------------------------
def complementary(ch: KrausChannel) -> KrausChannel:
    """Ṽ_i[α, k] = K_α[i, k]: one r x d_in Kraus operator per output basis vector"""
    stack = np.stack(ch.kraus_ops)                 # (α, i, k)
    ops = tuple(stack[:, i, :] for i in range(ch.d_out))
    return KrausChannel(ops, d_in=ch.d_in, d_out=ch.rank, name=f"complementary({ch.name})",
                        unital=False)


def stinespring(ch: KrausChannel) -> np.ndarray:
    """Isometry H_in -> H_out ⊗ H_env with row index i * r + α"""
    stack = np.stack(ch.kraus_ops)                 # (α, i, k)
    return stack.transpose(1, 0, 2).reshape(ch.d_out * ch.rank, ch.d_in)


def stinespring_isometry(j: Union[TwoJ, int]) -> np.ndarray:
    """V = (Jx; Jy; Jz)/sqrt(j(j+1)) interleaved as system ⊗ environment"""
    return stinespring(landau_streater(j))


def system_output(ch: KrausChannel, rho) -> np.ndarray:
    V = stinespring(ch)
    return partial_trace(V @ as_matrix(rho) @ V.conj().T, ch.d_out, ch.rank, which=SUBSYSTEM_B)


def environment_output(ch: KrausChannel, rho) -> np.ndarray:
    V = stinespring(ch)
    return partial_trace(V @ as_matrix(rho) @ V.conj().T, ch.d_out, ch.rank, which=SUBSYSTEM_A)


# ------------------------------------------------------------------------------
# Algebra of channels
# ------------------------------------------------------------------------------
def compose(A: KrausChannel, B: KrausChannel) -> KrausChannel:
    """A ∘ B: apply B first"""
    if B.d_out != A.d_in:
        raise ContractViolation(f"cannot compose: {B.name} outputs dimension {B.d_out}, "
                                f"{A.name} expects {A.d_in}")
    ops = tuple(KA @ KB for KA in A.kraus_ops for KB in B.kraus_ops)
    return KrausChannel(ops, d_in=B.d_in, d_out=A.d_out, name=f"{A.name}∘{B.name}",
                        unital=A.unital and B.unital)


def tensor(A: KrausChannel, B: KrausChannel) -> KrausChannel:
    ops = tuple(np.kron(KA, KB) for KA in A.kraus_ops for KB in B.kraus_ops)
    return KrausChannel(ops, d_in=A.d_in * B.d_in, d_out=A.d_out * B.d_out,
                        name=f"{A.name}⊗{B.name}", unital=A.unital and B.unital)


def dual(ch: KrausChannel) -> KrausChannel:
    ops = tuple(K.conj().T for K in ch.kraus_ops)
    return KrausChannel(ops, d_in=ch.d_out, d_out=ch.d_in, name=f"dual({ch.name})", unital=ch.unital)


# ------------------------------------------------------------------------------
# Verdicts
# ------------------------------------------------------------------------------
def _check_from_choi(omega: ChoiMatrix, tol: float) -> ChannelCheck:
    values = sla.eigvalsh(hermitian_part(omega.matrix))
    T = omega.matrix.reshape(omega.d_out, omega.d_in, omega.d_out, omega.d_in)
    reduced_in = np.einsum("aiak->ik", T) * omega.d_in
    reduced_out = np.einsum("aibi->ab", T) * omega.d_in
    unital = None
    if omega.d_in == omega.d_out:
        unital = max_abs(reduced_out - np.eye(omega.d_out))
    return ChannelCheck(
        tp_residual=max_abs(reduced_in - np.eye(omega.d_in)),
        unital_residual=unital,
        choi_min_eigenvalue=float(values.min()),
        tol=tol,
    )


def channel_check(ch: Union[KrausChannel, ChoiMatrix], tol: float = TOL_CLOSED) -> ChannelCheck:
    if isinstance(ch, ChoiMatrix):
        return _check_from_choi(ch, tol)
    tp = sum(K.conj().T @ K for K in ch.kraus_ops)
    unital = None
    if ch.is_square:
        unital = max_abs(sum(K @ K.conj().T for K in ch.kraus_ops) - np.eye(ch.d_out))
    values = sla.eigvalsh(hermitian_part(choi(ch).matrix))
    return ChannelCheck(
        tp_residual=max_abs(tp - np.eye(ch.d_in)),
        unital_residual=unital,
        choi_min_eigenvalue=float(values.min()),
        tol=tol,
    )


def is_cptp(ch: Union[KrausChannel, ChoiMatrix], tol: float = TOL_CLOSED) -> ChannelCheck:
    check = channel_check(ch, tol)
    logger.debug("cptp check: tp residual %.3e, min Choi eigenvalue %.3e",
                 check.tp_residual, check.choi_min_eigenvalue)
    return check


def is_unital(ch: Union[KrausChannel, ChoiMatrix], tol: float = TOL_CLOSED) -> ChannelCheck:
    return channel_check(ch, tol)
