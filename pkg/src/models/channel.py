from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Any, Tuple

import numpy as np

from src.errors import ContractViolation


def _frozen(matrix) -> np.ndarray:
    array = np.array(matrix, dtype=np.complex128)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class KrausChannel:
    """Channel X -> sum K X K† given by d_out x d_in Kraus operators"""
    kraus_ops: Tuple[np.ndarray, ...]
    d_in: int
    d_out: int
    name: str = "channel"
    unital: bool = False

    def __post_init__(self):
        if not self.kraus_ops:
            raise ContractViolation("a channel needs at least one Kraus operator")
        ops = tuple(_frozen(K) for K in self.kraus_ops)
        for K in ops:
            if K.shape != (self.d_out, self.d_in):
                raise ContractViolation(
                    f"Kraus operator of shape {K.shape} does not match "
                    f"d_out x d_in = {self.d_out} x {self.d_in}")
        object.__setattr__(self, "kraus_ops", ops)

    @classmethod
    def from_ops(cls, ops, name: str = "channel", unital: bool = False) -> "KrausChannel":
        ops = [np.asarray(K, dtype=np.complex128) for K in ops]
        if not ops:
            raise ContractViolation("a channel needs at least one Kraus operator")
        d_out, d_in = ops[0].shape
        return cls(tuple(ops), d_in=d_in, d_out=d_out, name=name, unital=unital)

    @property
    def rank(self) -> int:
        return len(self.kraus_ops)

    @property
    def is_square(self) -> bool:
        return self.d_in == self.d_out

    def __len__(self):
        return self.rank

    def __iter__(self):
        return iter(self.kraus_ops)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'd_in': self.d_in,
            'd_out': self.d_out,
            'kraus_count': self.rank,
            'unital': self.unital,
        }


@dataclass(frozen=True)
class ChoiMatrix:
    """Normalized Choi state (Φ ⊗ Id)[|ψ+><ψ+|] on H_out ⊗ H_in"""
    matrix: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        n = self.d_in * self.d_out
        if matrix.shape != (n, n):
            raise ContractViolation(f"Choi matrix must be {n}x{n}, got {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def to_dict(self) -> Dict[str, Any]:
        return {'d_in': self.d_in, 'd_out': self.d_out, 'trace': self.trace}


@dataclass(frozen=True)
class SuperOperator:
    """d_out² x d_in² matrix acting on row-major vectorized operators"""
    matrix: np.ndarray
    d_in: int
    d_out: int
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        shape = (self.d_out ** 2, self.d_in ** 2)
        if matrix.shape != shape:
            raise ContractViolation(f"superoperator must be {shape[0]}x{shape[1]}, got {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    def to_dict(self) -> Dict[str, Any]:
        return {'d_in': self.d_in, 'd_out': self.d_out, **self.metadata}
