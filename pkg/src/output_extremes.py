"""
Maximal output p-norms and minimal output entropy.

Closed forms come first; the numerical side is a projected gradient ascent
on the unit sphere of input states with Armijo backtracking and seeded
random restarts. Restart i draws its start from child i of
SeedSequence(cfg.seed), so results do not depend on thread scheduling.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg as sla

from src.angular_momentum import spin_operators, spin_projection
from src.channel_core import apply, dual, landau_streater, tensor
from src.errors import ContractViolation, require
from src.linalg_core import (
    check_schatten_index,
    eigvals_hermitian,
    hermitian_part,
    norm_of_values,
    purity,
    shannon_entropy,
)
from src.models.channel import KrausChannel
from src.models.reports import ExtremeResult, OptimizerConfig
from src.models.spectrum import Spectrum
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)

SpinLike = Union[TwoJ, int]

POLISH_P = 40.0
ARMIJO_C = 1e-4
MIN_STEP = 1e-12
STALL_GRADIENT = 1e-6
LEMMA_TOL = 1e-10


# ------------------------------------------------------------------------------
# Closed forms
# ------------------------------------------------------------------------------
def max_p_norm_closed(j: SpinLike, p) -> float:
    """ν_p = (j^p + 1)^(1/p) / (j + 1), and max(j, 1) / (j + 1) for p = ∞"""
    j = TwoJ.of(j).require_channel()
    p = check_schatten_index(p)
    jj = j.j
    if math.isinf(p):
        return max(jj, 1.0) / (jj + 1)
    return norm_of_values([jj, 1.0], p) / (jj + 1)


def min_output_entropy_closed(j: SpinLike, nats: bool = False) -> float:
    """S_min = log(j+1) - (j/(j+1)) log j, in bits unless nats is set"""
    j = TwoJ.of(j).require_channel()
    jj = j.j
    value = math.log(jj + 1) - (jj / (jj + 1)) * math.log(jj)
    return value if nats else value / math.log(2)


def optimal_output_spectrum(j: SpinLike) -> Spectrum:
    """{j/(j+1), 1/(j+1), 0, ...}, which majorizes every other pure-input output spectrum"""
    j = TwoJ.of(j).require_channel()
    values = [j.j / (j.j + 1), 1 / (j.j + 1)] + [0.0] * (j.dim - 2)
    return Spectrum(values)


# ------------------------------------------------------------------------------
# Objectives and gradients
# ------------------------------------------------------------------------------
def _output(ch: KrausChannel, psi: np.ndarray) -> np.ndarray:
    return hermitian_part(apply(ch, np.outer(psi, psi.conj())))


def _tangent(psi: np.ndarray, g: np.ndarray) -> np.ndarray:
    return g - np.real(np.vdot(psi, g)) * psi


def purity_gradient(ch: KrausChannel, psi, adjoint: Optional[KrausChannel] = None) -> np.ndarray:
    """Riemannian gradient of tr(Φ[ψψ†]²): 4 Φ†[Φ[ψψ†]] ψ projected to the sphere"""
    psi = np.asarray(psi, dtype=np.complex128)
    adjoint = dual(ch) if adjoint is None else adjoint
    g = 4 * apply(adjoint, _output(ch, psi)) @ psi
    return _tangent(psi, g)


def _norm_and_gradient(ch: KrausChannel, adjoint: KrausChannel, psi: np.ndarray, p: float):
    """‖Φ[ψψ†]‖_p and its Euclidean gradient 2 Φ†[(ρ/ν)^(p-1)] ψ"""
    rho = _output(ch, psi)
    if p == 2.0:
        value = math.sqrt(max(purity(rho), 0.0))
        if value == 0.0:
            return 0.0, np.zeros_like(psi)
        return value, 2 * apply(adjoint, rho / value) @ psi
    values, vectors = sla.eigh(rho)
    values = np.clip(values, 0.0, None)
    value = norm_of_values(values, p)
    if value == 0.0:
        return 0.0, np.zeros_like(psi)
    weighted = (vectors * (values / value) ** (p - 1)) @ vectors.conj().T
    return value, 2 * apply(adjoint, weighted) @ psi


def norm_gradient(ch: KrausChannel, psi, p) -> np.ndarray:
    """Riemannian gradient of ‖Φ[ψψ†]‖_p for finite p > 1"""
    p = check_schatten_index(p)
    require(1 < p < math.inf, f"norm gradient needs finite p > 1, got {p}")
    psi = np.asarray(psi, dtype=np.complex128)
    _, g = _norm_and_gradient(ch, dual(ch), psi, p)
    return _tangent(psi, g)


def output_p_norm(ch: KrausChannel, psi, p) -> float:
    psi = np.asarray(psi, dtype=np.complex128)
    return norm_of_values(eigvals_hermitian(_output(ch, psi)), p)


def output_entropy(ch: KrausChannel, psi, base: float = 2.0) -> float:
    psi = np.asarray(psi, dtype=np.complex128)
    values = np.clip(eigvals_hermitian(_output(ch, psi)), 0.0, None)
    return shannon_entropy(values, base)


# ------------------------------------------------------------------------------
# Optimizer
# ------------------------------------------------------------------------------
@dataclass
class RestartOutcome:
    index: int
    value: float
    state: np.ndarray
    gradient_norm: float
    converged: bool
    iterations: int


def _random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def _ascend(objective: Callable, psi: np.ndarray, cfg: OptimizerConfig) -> Tuple[np.ndarray, float, float, bool, int]:
    """Gradient ascent on the sphere, retraction by normalization"""
    value, g = objective(psi)
    g = _tangent(psi, g)
    gnorm = float(np.linalg.norm(g))
    step = cfg.step
    for iteration in range(1, cfg.max_iters + 1):
        if gnorm <= cfg.grad_tol:
            return psi, value, gnorm, True, iteration
        slack = 64 * np.finfo(float).eps * max(1.0, abs(value))
        t = step
        while True:
            candidate = psi + t * g
            candidate = candidate / np.linalg.norm(candidate)
            c_value, c_grad = objective(candidate)
            if c_value >= value + ARMIJO_C * t * gnorm ** 2 - slack:
                break
            t /= 2
            if t < MIN_STEP:
                # no ascent step left at working precision
                return psi, value, gnorm, gnorm <= STALL_GRADIENT, iteration
        psi, value = candidate, c_value
        g = _tangent(psi, c_grad)
        gnorm = float(np.linalg.norm(g))
        # let the step grow back after backtracking
        step = min(cfg.step, 2 * t)
    return psi, value, gnorm, gnorm <= STALL_GRADIENT, cfg.max_iters


def _run_restarts(ch: KrausChannel, p: float, cfg: OptimizerConfig) -> List[RestartOutcome]:
    adjoint = dual(ch)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    def objective(psi):
        return _norm_and_gradient(ch, adjoint, psi, p)

    def run(index: int) -> RestartOutcome:
        rng = np.random.default_rng(seeds[index])
        psi0 = _random_state(ch.d_in, rng)
        psi, value, gnorm, converged, iterations = _ascend(objective, psi0, cfg)
        logger.debug("restart %d: value %.12f, |grad| %.2e, %d iterations%s",
                     index, value, gnorm, iterations, "" if converged else " (not converged)")
        return RestartOutcome(index, value, psi, gnorm, converged, iterations)

    if cfg.workers > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(run, range(cfg.restarts)))
    else:
        outcomes = [run(index) for index in range(cfg.restarts)]
    return outcomes


def _best(outcomes: List[RestartOutcome]) -> RestartOutcome:
    return min(outcomes, key=lambda outcome: (-outcome.value, outcome.index))


def _result(outcomes: List[RestartOutcome], best: RestartOutcome, value: float, state, p: float) -> ExtremeResult:
    converged = sum(1 for outcome in outcomes if outcome.converged)
    if not converged:
        logger.warning("no optimizer restart converged (best |grad| %.2e)", best.gradient_norm)
    return ExtremeResult(
        value=float(value),
        argmax_state=state / np.linalg.norm(state),
        converged_restarts=converged,
        best_gradient_norm=best.gradient_norm,
        restarts=len(outcomes),
        p=p,
    )


def _norm_from_purity(ch: KrausChannel, p: float, cfg: OptimizerConfig,
                      outcomes: List[RestartOutcome]) -> ExtremeResult:
    """ν_2 directly, or ν_∞ by polishing the best purity state at a large finite p"""
    best = _best(outcomes)
    if p == 2.0:
        return _result(outcomes, best, best.value, best.state, p)
    adjoint = dual(ch)
    polished, _, _, _, _ = _ascend(lambda psi: _norm_and_gradient(ch, adjoint, psi, POLISH_P), best.state, cfg)
    candidates = [(output_p_norm(ch, best.state, math.inf), best.state),
                  (output_p_norm(ch, polished, math.inf), polished)]
    value, state = max(candidates, key=lambda pair: pair[0])
    return _result(outcomes, best, value, state, p)


def _entropy_from(ch: KrausChannel, outcomes: List[RestartOutcome], nats: bool) -> ExtremeResult:
    base = math.e if nats else 2.0
    scored = [(output_entropy(ch, outcome.state, base), outcome.index, outcome) for outcome in outcomes]
    entropy, _, winner = min(scored, key=lambda item: (item[0], item[1]))
    return _result(outcomes, winner, entropy, winner.state, 2.0)


def optimize_output_norm(ch: KrausChannel, p, cfg: Optional[OptimizerConfig] = None) -> ExtremeResult:
    """Numerical ν_p(Φ) = max over pure ψ of ‖Φ[ψψ†]‖_p"""
    cfg = OptimizerConfig() if cfg is None else cfg
    p = check_schatten_index(p)
    logger.info("optimizing output %s-norm of %s over %d restarts", p, ch.name, cfg.restarts)

    if p == 1.0:
        psi = np.zeros(ch.d_in, dtype=np.complex128)
        psi[0] = 1.0
        return ExtremeResult(value=output_p_norm(ch, psi, 1.0), argmax_state=psi,
                             converged_restarts=cfg.restarts, best_gradient_norm=0.0,
                             restarts=cfg.restarts, p=p)

    if p == 2.0 or math.isinf(p):
        return _norm_from_purity(ch, p, cfg, _run_restarts(ch, 2.0, cfg))
    outcomes = _run_restarts(ch, p, cfg)
    best = _best(outcomes)
    return _result(outcomes, best, best.value, best.state, p)


def min_output_entropy_numeric(ch: KrausChannel, cfg: Optional[OptimizerConfig] = None,
                               nats: bool = False) -> ExtremeResult:
    """Entropy at the purity-optimal restart end states, minimized over restarts.

    This equals the minimal output entropy only when the purity-optimal output
    majorizes every other pure-state output. The Landau–Streater channel has that
    property; for a general channel the value is an upper bound on S_min.
    """
    cfg = OptimizerConfig() if cfg is None else cfg
    return _entropy_from(ch, _run_restarts(ch, 2.0, cfg), nats)


def output_extremes(ch: KrausChannel, p, cfg: Optional[OptimizerConfig] = None) -> Tuple[ExtremeResult, ExtremeResult]:
    """(ν_p, minimal output entropy), sharing one set of purity restarts when p is 2 or ∞"""
    cfg = OptimizerConfig() if cfg is None else cfg
    p = check_schatten_index(p)
    if p == 2.0 or math.isinf(p):
        logger.info("optimizing output %s-norm and entropy of %s over %d restarts", p, ch.name, cfg.restarts)
        outcomes = _run_restarts(ch, 2.0, cfg)
        return _norm_from_purity(ch, p, cfg, outcomes), _entropy_from(ch, outcomes, nats=False)
    return optimize_output_norm(ch, p, cfg), min_output_entropy_numeric(ch, cfg)


# ------------------------------------------------------------------------------
# Spin-operator inequalities used by the extremality argument
# ------------------------------------------------------------------------------
def _unit_state(psi, d: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    require(psi.shape == (d,), f"state must have dimension {d}, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    require(abs(norm - 1.0) <= 1e-10, f"state must be normalized, got norm {norm:.12f}")
    return psi


def lemma1_spectrum(j: SpinLike, n) -> Spectrum:
    """Spectrum of n·J for a unit vector n, which is {j, j-1, ..., -j}"""
    n = np.asarray(n, dtype=float)
    require(abs(np.linalg.norm(n) - 1.0) <= 1e-10, "direction must be a unit vector")
    return Spectrum(eigvals_hermitian(spin_projection(j, n)))


def lemma2_value(j: SpinLike, n, psi) -> float:
    """‖(n·J) ψ‖², at most j² with equality at maximal polarization along n"""
    j = TwoJ.of(j).require_channel()
    psi = _unit_state(psi, j.dim)
    return float(np.linalg.norm(spin_projection(j, n) @ psi) ** 2)


def lemma3_check(j: SpinLike, psi) -> Tuple[float, float, bool]:
    """(<Jz>², 9j²(j² - <Jx²>)/(2j-1), lhs <= rhs)"""
    j = TwoJ.of(j)
    if j.two_j < 2:
        raise ContractViolation(f"the Jz/Jx² inequality needs j >= 1, got j = {j.label}")
    psi = _unit_state(psi, j.dim)
    spins = spin_operators(j)
    jz = float(np.real(np.vdot(psi, spins.Jz @ psi)))
    jx2 = float(np.real(np.vdot(psi, spins.Jx @ (spins.Jx @ psi))))
    jj = j.j
    lhs = jz ** 2
    rhs = 9 * jj ** 2 * (jj ** 2 - jx2) / (2 * jj - 1)
    return lhs, rhs, lhs <= rhs + LEMMA_TOL


def _check_kl(k, l) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    require(k.shape == (3,) and l.shape == (3,), "k and l must be 3-vectors")
    total = float(k @ k + l @ l)
    require(abs(total - 1.0) <= 1e-10, f"|k|² + |l|² must equal 1, got {total:.12f}")
    return k, l


def lemma4_value(j: SpinLike, k, l, psi) -> float:
    """‖sum (k_α + i l_α) J_α ψ‖², bounded by max(j, j²)"""
    j = TwoJ.of(j).require_channel()
    k, l = _check_kl(k, l)
    psi = _unit_state(psi, j.dim)
    A = spin_projection(j, k) + 1j * spin_projection(j, l)
    return float(np.linalg.norm(A @ psi) ** 2)


def lemma4_operator(j: SpinLike, k, l) -> np.ndarray:
    """F = (k·J)² + (l·J)² + (l×k)·J, so that <ψ|F|ψ> = lemma4_value"""
    j = TwoJ.of(j).require_channel()
    k, l = _check_kl(k, l)
    kJ = spin_projection(j, k)
    lJ = spin_projection(j, l)
    return kJ @ kJ + lJ @ lJ + spin_projection(j, np.cross(l, k))


def lemma4_bound(j: SpinLike) -> float:
    jj = TwoJ.of(j).j
    return max(jj, jj ** 2)


# ------------------------------------------------------------------------------
# Multiplicativity of the maximal 2-norm
# ------------------------------------------------------------------------------
@dataclass(frozen=True)
class MultiplicativityResult:
    nu2_single: float
    nu2_double: float
    single: ExtremeResult
    double: ExtremeResult

    @property
    def gap(self) -> float:
        return self.nu2_double - self.nu2_single ** 2

    @property
    def converged(self) -> bool:
        return self.single.converged and self.double.converged

    def to_dict(self):
        return {
            'nu2_single': self.nu2_single,
            'nu2_single_squared': self.nu2_single ** 2,
            'nu2_double': self.nu2_double,
            'gap': self.gap,
            'converged': self.converged,
            'single': self.single.to_dict(),
            'double': self.double.to_dict(),
        }


def multiplicativity_experiment(j: SpinLike, cfg: Optional[OptimizerConfig] = None) -> MultiplicativityResult:
    """ν₂ for Φ and for Φ⊗Φ over entangled inputs of H_d ⊗ H_d"""
    cfg = OptimizerConfig() if cfg is None else cfg
    ch = landau_streater(j)
    single = optimize_output_norm(ch, 2.0, cfg)
    double = optimize_output_norm(tensor(ch, ch), 2.0, cfg)
    result = MultiplicativityResult(single.value, double.value, single, double)
    logger.info("multiplicativity 2j=%d: gap %.3e", TwoJ.of(j).two_j, result.gap)
    return result


def product_purity_residual(ch: KrausChannel, psi) -> float:
    """|tr((Φ⊗Φ)[ψψ†⊗ψψ†])² - (tr Φ[ψψ†]²)²|"""
    psi = np.asarray(psi, dtype=np.complex128)
    single = purity(_output(ch, psi))
    pair = np.kron(psi, psi)
    double = purity(_output(tensor(ch, ch), pair))
    return abs(double - single ** 2)
