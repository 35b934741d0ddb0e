from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Any, List, Tuple, Union

import numpy as np

from src.errors import ContractViolation


@dataclass(frozen=True)
class TwoJ:
    """Spin label carried exactly as the non-negative integer 2j"""
    two_j: int

    def __post_init__(self):
        if isinstance(self.two_j, bool) or not isinstance(self.two_j, (int, np.integer)):
            raise ContractViolation(f"two_j must be an integer, got {self.two_j!r}")
        if self.two_j < 0:
            raise ContractViolation(f"two_j must be non-negative, got {self.two_j}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @classmethod
    def of(cls, value: Union["TwoJ", int]) -> "TwoJ":
        return value if isinstance(value, TwoJ) else cls(value)

    @classmethod
    def from_j(cls, j: Union[str, float, Fraction]) -> "TwoJ":
        """Parse j such as '3/2' or 1.5, rejecting anything that is not a half-integer"""
        try:
            exact = Fraction(str(j)) if not isinstance(j, Fraction) else j
        except (ValueError, ZeroDivisionError):
            raise ContractViolation(f"cannot parse spin {j!r}")
        doubled = 2 * exact
        if doubled.denominator != 1:
            raise ContractViolation(f"spin {j!r} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def exact(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def casimir(self) -> Fraction:
        """j(j+1)"""
        return self.exact * (self.exact + 1)

    @property
    def two_m_values(self) -> List[int]:
        """2m for m = j, j-1, ..., -j (basis order)"""
        return list(range(self.two_j, -self.two_j - 1, -2))

    @property
    def m_values(self) -> np.ndarray:
        return np.array(self.two_m_values, dtype=float) / 2

    def index_of(self, two_m: int) -> int:
        if abs(two_m) > self.two_j or (self.two_j - two_m) % 2:
            raise ContractViolation(f"2m = {two_m} is not a projection of spin {self.label}")
        return (self.two_j - two_m) // 2

    def require_channel(self) -> "TwoJ":
        if self.two_j < 1:
            raise ContractViolation("the Landau–Streater channel needs j >= 1/2 (two_j >= 1)")
        return self

    @property
    def label(self) -> str:
        return str(self.exact)

    def to_dict(self) -> Dict[str, Any]:
        return {'two_j': self.two_j, 'j': self.label, 'dim': self.dim}


@dataclass(frozen=True)
class SpinTriple:
    """Spin operators J_x, J_y, J_z in the basis |j,m>, m descending"""
    two_j: TwoJ
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray

    def __post_init__(self):
        for name in ('Jx', 'Jy', 'Jz'):
            matrix = np.array(getattr(self, name), dtype=np.complex128)
            matrix.setflags(write=False)
            object.__setattr__(self, name, matrix)

    def as_tuple(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.Jx, self.Jy, self.Jz)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, alpha: int) -> np.ndarray:
        return self.as_tuple()[alpha]

    @property
    def plus(self) -> np.ndarray:
        return self.Jx + 1j * self.Jy

    @property
    def minus(self) -> np.ndarray:
        return self.Jx - 1j * self.Jy

    def projection(self, n) -> np.ndarray:
        """n·J for a real 3-vector n"""
        n = np.asarray(n, dtype=float)
        return n[0] * self.Jx + n[1] * self.Jy + n[2] * self.Jz
