from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Dict, Any, Mapping, Optional

from src.errors import ContractViolation


def _env_float(env: Mapping[str, str], key: str, default: float) -> float:
    raw = env.get(key)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ContractViolation(f"{key} must be a number, got {raw!r}")


def _env_int(env: Mapping[str, str], key: str, default: int) -> int:
    raw = env.get(key)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ContractViolation(f"{key} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    tol_closed: float = 1e-10
    tol_optimizer: float = 1e-6
    seed: int = 7
    restarts: int = 64
    max_two_j: int = 12
    log_level: str = "WARNING"
    workers: int = 1

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None) -> "Settings":
        env = os.environ if env is None else env
        settings = cls(
            tol_closed=_env_float(env, "LS_TOL_CLOSED", cls.tol_closed),
            tol_optimizer=_env_float(env, "LS_TOL_OPTIMIZER", cls.tol_optimizer),
            seed=_env_int(env, "LS_SEED", cls.seed),
            restarts=_env_int(env, "LS_RESTARTS", cls.restarts),
            max_two_j=_env_int(env, "LS_MAX_TWO_J", cls.max_two_j),
            log_level=env.get("LS_LOG_LEVEL") or cls.log_level,
            workers=_env_int(env, "LS_WORKERS", cls.workers),
        )
        settings.validate()
        return settings

    def validate(self) -> "Settings":
        if not (self.tol_closed > 0 and self.tol_optimizer > 0):
            raise ContractViolation("tolerances must be positive")
        if self.seed < 0:
            raise ContractViolation(f"seed must be >= 0, got {self.seed}")
        if self.restarts < 1:
            raise ContractViolation(f"restarts must be >= 1, got {self.restarts}")
        if self.max_two_j < 1:
            raise ContractViolation(f"LS_MAX_TWO_J must be >= 1, got {self.max_two_j}")
        if self.workers < 1:
            raise ContractViolation(f"LS_WORKERS must be >= 1, got {self.workers}")
        return self

    def override(self, **changes) -> "Settings":
        """Copy with command-line values applied; None leaves a field untouched"""
        changes = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **changes).validate()

    def tolerances(self) -> Dict[str, float]:
        return {'closed_form': self.tol_closed, 'optimizer': self.tol_optimizer}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tol_closed': self.tol_closed,
            'tol_optimizer': self.tol_optimizer,
            'seed': self.seed,
            'restarts': self.restarts,
            'max_two_j': self.max_two_j,
            'log_level': self.log_level,
            'workers': self.workers,
        }
