from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Any, List, Tuple

import numpy as np


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted descending, repeats listed"""
    values: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=float))[::-1].copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values.tolist())

    @property
    def total(self) -> float:
        return float(np.sum(self.values))

    def is_density(self, tol: float = 1e-10) -> bool:
        return bool(self.values.size and self.values.min() >= -tol and abs(self.total - 1.0) <= tol)

    def to_dict(self) -> Dict[str, Any]:
        return {'values': self.values.tolist()}


@dataclass(frozen=True)
class MapSpectrum:
    """Closed-form spectrum of the Landau–Streater map: (λ_L, 2L+1) for L = 0..2j"""
    two_j: int
    pairs: Tuple[Tuple[Fraction, int], ...]

    @property
    def eigenvalues(self) -> List[float]:
        return [float(lam) for lam, _ in self.pairs]

    @property
    def multiplicities(self) -> List[int]:
        return [mult for _, mult in self.pairs]

    def flattened(self) -> Spectrum:
        values = []
        for lam, mult in self.pairs:
            values.extend([float(lam)] * mult)
        return Spectrum(values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'two_j': self.two_j,
            'levels': [
                {'L': L, 'lambda_L': float(lam), 'lambda_L_exact': str(lam), 'multiplicity': mult}
                for L, (lam, mult) in enumerate(self.pairs)
            ],
            'total_multiplicity': sum(self.multiplicities),
        }
