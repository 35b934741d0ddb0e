from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional

import numpy as np

from src.errors import ContractViolation

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ChannelCheck:
    """Residuals behind the CPTP / unital verdicts of a channel"""
    tp_residual: float
    unital_residual: Optional[float]
    choi_min_eigenvalue: float
    tol: float

    @property
    def completely_positive(self) -> bool:
        return self.choi_min_eigenvalue >= -self.tol

    @property
    def trace_preserving(self) -> bool:
        return self.tp_residual <= self.tol

    @property
    def cptp(self) -> bool:
        return self.completely_positive and self.trace_preserving

    @property
    def unital(self) -> bool:
        return self.unital_residual is not None and self.unital_residual <= self.tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cptp': self.cptp,
            'unital': self.unital,
            'tp_residual': self.tp_residual,
            'unital_residual': self.unital_residual,
            'choi_min_eigenvalue': self.choi_min_eigenvalue,
        }


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_iters: int = 2000
    step: float = 0.5
    grad_tol: float = 1e-8
    seed: int = 7
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ContractViolation(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise ContractViolation(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.grad_tol > 0:
            raise ContractViolation(f"grad_tol must be positive, got {self.grad_tol}")
        if not self.step > 0:
            raise ContractViolation(f"step must be positive, got {self.step}")
        if self.workers < 1:
            raise ContractViolation(f"workers must be >= 1, got {self.workers}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'restarts': self.restarts,
            'max_iters': self.max_iters,
            'step': self.step,
            'grad_tol': self.grad_tol,
            'seed': self.seed,
        }


@dataclass(frozen=True)
class ExtremeResult:
    """Best value found over all restarts and the pure state attaining it"""
    value: float
    argmax_state: np.ndarray
    converged_restarts: int
    best_gradient_norm: float
    restarts: int = 1
    p: float = 2.0

    def __post_init__(self):
        psi = np.array(self.argmax_state, dtype=np.complex128)
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-12:
            raise ContractViolation(f"argmax state must have unit norm, got {norm:.15f}")
        psi.setflags(write=False)
        object.__setattr__(self, "argmax_state", psi)

    @property
    def converged(self) -> bool:
        return self.converged_restarts > 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'value': self.value,
            'converged': self.converged,
            'converged_restarts': self.converged_restarts,
            'restarts': self.restarts,
            'best_gradient_norm': self.best_gradient_norm,
        }


@dataclass(frozen=True)
class CapacityReport:
    """Capacities of one Landau–Streater channel, in bits.

    `q_lower_bound` is the coherent information at the maximally mixed input and
    equals `coherent_info_mm`, except when `q_exact_zero` holds (j = 1/2 and j = 1).
    There Q is known to vanish, no bound is reported and `q_lower_bound` is None.
    """
    two_j: int
    chi_capacity: float
    ea_capacity: float
    q_lower_bound: Optional[float]
    q_exact_zero: bool
    s_min: float
    coherent_info_mm: float
    classical_capacity_exact: bool

    def __post_init__(self):
        if self.chi_capacity < -1e-12 or self.ea_capacity < self.chi_capacity - 1e-12:
            raise ContractViolation(
                f"capacities out of order: C_ea = {self.ea_capacity}, C_chi = {self.chi_capacity}")
        if self.q_exact_zero != (self.q_lower_bound is None):
            raise ContractViolation("q_lower_bound must be None exactly when Q is known to vanish")
        if self.q_lower_bound is not None and abs(self.q_lower_bound - self.coherent_info_mm) > 1e-9:
            raise ContractViolation(
                f"q_lower_bound {self.q_lower_bound} differs from coherent_info_mm {self.coherent_info_mm}")

    @property
    def caveat(self) -> str:
        if self.classical_capacity_exact:
            return "chi-capacity is additive here, so it equals the classical capacity"
        return "chi-capacity is a lower bound on the classical capacity"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'two_j': self.two_j,
            'chi_capacity': self.chi_capacity,
            'ea_capacity': self.ea_capacity,
            'q_lower_bound': self.q_lower_bound,
            'q_exact_zero': self.q_exact_zero,
            's_min': self.s_min,
            'coherent_info_mm': self.coherent_info_mm,
            'classical_capacity_exact': self.classical_capacity_exact,
            'caveat': self.caveat,
        }


@dataclass(frozen=True)
class DegradabilityVerdict:
    two_j: Optional[int]
    degradable: bool
    antidegradable: bool
    certificates: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'two_j': self.two_j,
            'degradable': self.degradable,
            'antidegradable': self.antidegradable,
            'certificates': dict(self.certificates),
        }


@dataclass(frozen=True)
class PptReport:
    min_pt_eigenvalue: float
    tol: float = 1e-9

    @property
    def entangled(self) -> bool:
        return self.min_pt_eigenvalue < -self.tol

    def to_dict(self) -> Dict[str, Any]:
        return {'min_pt_eigenvalue': self.min_pt_eigenvalue, 'entangled': self.entangled}


@dataclass
class Report:
    """Envelope written by every CLI command"""
    two_j: int
    command: str
    payload: Dict[str, Any]
    seed: Optional[int] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    breaches: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'schema_version': self.schema_version,
            'command': self.command,
            'two_j': self.two_j,
            'seed': self.seed,
            'tolerances': dict(self.tolerances),
            'payload': self.payload,
        }
        if self.breaches:
            data['breaches'] = list(self.breaches)
        return data
