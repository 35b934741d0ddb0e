"""
Closed-form capacities of the Landau–Streater channel, all in bits.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from src.channel_core import apply, complementary, landau_streater
from src.linalg_core import hermitian_part, validate_density, von_neumann_entropy
from src.models.channel import KrausChannel
from src.models.reports import CapacityReport, OptimizerConfig
from src.models.spin import TwoJ
from src.output_extremes import min_output_entropy_closed, min_output_entropy_numeric

logger = logging.getLogger(__name__)

SpinLike = Union[TwoJ, int]

# j = 1/2 and j = 1 are antidegradable, so Q vanishes there
ZERO_Q_TWO_J = (1, 2)


def chi_capacity(j: SpinLike) -> float:
    """C_χ = log(2j+1) - S_min = log((2j+1)/(j+1)) + (j/(j+1)) log j"""
    j = TwoJ.of(j).require_channel()
    return math.log2(j.dim) - min_output_entropy_closed(j)


def chi_capacity_numeric(ch: KrausChannel, cfg: Optional[OptimizerConfig] = None) -> float:
    """log d - S_min with S_min taken from the optimizer; valid for covariant channels"""
    return math.log2(ch.d_out) - min_output_entropy_numeric(ch, cfg).value


def ea_capacity(j: SpinLike) -> float:
    j = TwoJ.of(j).require_channel()
    return 2 * math.log2(j.dim) - math.log2(3)


def ea_capacity_numeric(ch: KrausChannel) -> float:
    """S(ρ) + S(Φ[ρ]) - S(Φ̃[ρ]) at ρ = I/d"""
    rho = np.eye(ch.d_in) / ch.d_in
    return von_neumann_entropy(rho) + coherent_information(ch, rho)


def coherent_information(ch: KrausChannel, rho) -> float:
    """I_c(ρ, Φ) = S(Φ[ρ]) - S(Φ̃[ρ])"""
    rho = validate_density(rho)
    system = hermitian_part(apply(ch, rho))
    environment = hermitian_part(apply(complementary(ch), rho))
    return von_neumann_entropy(system) - von_neumann_entropy(environment)


def coherent_info_maximally_mixed(j: SpinLike) -> float:
    j = TwoJ.of(j).require_channel()
    return coherent_information(landau_streater(j), np.eye(j.dim) / j.dim)


def quantum_capacity_verdict(j: SpinLike) -> Tuple[bool, Optional[float]]:
    """(Q is exactly zero, single-letter lower bound log(2j+1) - log 3), the bound being None when Q = 0"""
    j = TwoJ.of(j).require_channel()
    if j.two_j in ZERO_Q_TWO_J:
        return True, None
    return False, math.log2(j.dim) - math.log2(3)


def capacity_report(j: SpinLike) -> CapacityReport:
    j = TwoJ.of(j).require_channel()
    logger.info("capacities for 2j=%d", j.two_j)
    q_zero, q_bound = quantum_capacity_verdict(j)
    return CapacityReport(
        two_j=j.two_j,
        chi_capacity=chi_capacity(j),
        ea_capacity=ea_capacity(j),
        q_lower_bound=q_bound,
        q_exact_zero=q_zero,
        s_min=min_output_entropy_closed(j),
        coherent_info_mm=coherent_info_maximally_mixed(j),
        classical_capacity_exact=j.two_j == 1,
    )
