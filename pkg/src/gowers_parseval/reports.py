"""Uniform result records for identity checks, serialisable to JSON."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

DEFAULT_TOLERANCE = 1e-9


def residual(lhs: complex, rhs: complex) -> float:
    """``|lhs - rhs| / max(1, |lhs|)``."""
    return float(abs(lhs - rhs) / max(1.0, abs(lhs)))


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def to_jsonable(value):
    if isinstance(value, (complex, np.complexfloating)):
        return complex_pair(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()] if value.ndim else to_jsonable(value.item())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


@dataclass
class IdentityReport:
    """Both sides of an identity, their residual and the parameters used.

    ``lhs``/``rhs`` are complex scalars or arrays (for function-valued
    identities, where ``residual`` is the max over entries).
    """

    check: str
    lhs: Any
    rhs: Any
    residual: float
    params: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOLERANCE
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.informational or self.residual < self.tolerance

    def to_dict(self) -> dict:
        return to_jsonable(
            {
                "check": self.check,
                "params": self.params,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "residual": self.residual,
                "tolerance": self.tolerance,
                "sizes": self.sizes,
                "passed": self.passed,
                "informational": self.informational,
            }
        )
