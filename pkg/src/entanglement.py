"""
PPT tests, the Schmidt-rank-2 witness state and entanglement-breaking verdicts.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, Any, Tuple, Union

import numpy as np
from scipy import linalg as sla

from src.angular_momentum import basis_dyad, basis_state
from src.channel_core import apply, choi, landau_streater, tensor
from src.linalg_core import (
    SUBSYSTEM_B,
    as_matrix,
    hermitian_part,
    max_abs,
    partial_transpose,
    validate_density,
)
from src.models.reports import PptReport
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)

SpinLike = Union[TwoJ, int]

ENTANGLED_TOL = 1e-9
PPT_TOL = 1e-10


def schmidt2_state(j: SpinLike) -> np.ndarray:
    """(|j,j>|j,j> + |j,-j>|j,-j>) / sqrt(2)"""
    j = TwoJ.of(j).require_channel()
    top = basis_state(j, j.two_j)
    bottom = basis_state(j, -j.two_j)
    return (np.kron(top, top) + np.kron(bottom, bottom)) / math.sqrt(2)


def ppt_check(rho, dimA: int, dimB: int, tol: float = ENTANGLED_TOL) -> PptReport:
    rho = validate_density(rho)
    pt = partial_transpose(rho, dimA, dimB, which=SUBSYSTEM_B)
    minimum = float(sla.eigvalsh(hermitian_part(pt)).min())
    return PptReport(min_pt_eigenvalue=minimum, tol=tol)


def witness_output(j: SpinLike) -> np.ndarray:
    """(Φ⊗Φ)[|φ><φ|] for the Schmidt-rank-2 state"""
    j = TwoJ.of(j).require_channel()
    ch = landau_streater(j)
    phi = schmidt2_state(j)
    return hermitian_part(apply(tensor(ch, ch), np.outer(phi, phi.conj())))


def witness_min_closed(j: SpinLike) -> float:
    """-j² / (2(j+1)²), the smallest PT eigenvalue of the witness output for j >= 1"""
    jj = TwoJ.of(j).j
    return -jj ** 2 / (2 * (jj + 1) ** 2)


def annihilation_witness(j: SpinLike, tol: float = ENTANGLED_TOL) -> PptReport:
    j = TwoJ.of(j).require_channel()
    report = ppt_check(witness_output(j), j.dim, j.dim, tol)
    logger.info("witness 2j=%d: min PT eigenvalue %.6e", j.two_j, report.min_pt_eigenvalue)
    return report


def eb_verdict(j: SpinLike) -> Tuple[bool, Dict[str, Any]]:
    """(entanglement breaking, certificate)"""
    j = TwoJ.of(j).require_channel()
    if j.two_j == 1:
        omega = choi(landau_streater(j)).matrix
        pt_min = float(sla.eigvalsh(hermitian_part(partial_transpose(omega, 2, 2, SUBSYSTEM_B))).min())
        return pt_min >= -PPT_TOL, {'choi_pt_min_eigenvalue': pt_min}
    witness = annihilation_witness(j)
    return not witness.entangled, {'witness_min_pt_eigenvalue': witness.min_pt_eigenvalue,
                                   'witness_entangled': witness.entangled}


def extreme_dyad_action(j: SpinLike) -> float:
    """max over ± of ‖Φ[|j,±j><j,∓j|] + (j/(j+1)) |j,±j><j,∓j|‖"""
    j = TwoJ.of(j).require_channel()
    ch = landau_streater(j)
    factor = j.j / (j.j + 1)
    worst = 0.0
    for sign in (1, -1):
        dyad = basis_dyad(j, sign * j.two_j, -sign * j.two_j)
        worst = max(worst, max_abs(apply(ch, dyad) + factor * dyad))
    return worst


def commutes_with_transpose(j: SpinLike, X) -> float:
    """‖(Φ[X])^T - Φ[X^T]‖ in the |j,m> basis"""
    ch = landau_streater(j)
    X = as_matrix(X)
    return max_abs(apply(ch, X).T - apply(ch, X.T))
