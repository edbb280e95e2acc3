"""Central finite-difference gradients and Hessians of scalar fields.

Used only as an oracle by the test suite and the ``verify`` command.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import OracleEvaluationError


@dataclass(frozen=True)
class FDConfig:
    """Per-axis step = max(rel_step * |coordinate|, floor).

    ``floor`` may be a scalar or one value per axis. When omitted it defaults to
    ``rel_step * max(1, max|coordinate|)``, so axes sitting at zero still get
    a step on the scale of the point.
    """

    rel_step: float = 1e-6
    floor: Optional[float | Sequence[float]] = None

    def __post_init__(self):
        if not 1e-12 < self.rel_step < 1e-2:
            raise ValueError(f"rel_step must lie in (1e-12, 1e-2), got {self.rel_step}")

    def steps(self, p: np.ndarray) -> np.ndarray:
        if self.floor is None:
            floor = np.full(p.shape, self.rel_step * max(1.0, float(np.max(np.abs(p)))))
        else:
            floor = np.broadcast_to(np.asarray(self.floor, dtype=float), p.shape)
        return np.maximum(self.rel_step * np.abs(p), floor)


# Second differences lose roughly eps/h^2; 1e-4 balances that against truncation.
HESSIAN_CONFIG = FDConfig(rel_step=1e-4)


def _eval(field: Callable, x: np.ndarray) -> float:
    value = float(field(x))
    if not math.isfinite(value):
        raise OracleEvaluationError(f"non-finite field value at {x.tolist()}")
    return value


def fd_gradient(field: Callable, p, cfg: FDConfig = FDConfig()) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    h = cfg.steps(p)
    grad = np.empty(p.size)
    for i in range(p.size):
        e = np.zeros(p.size)
        e[i] = h[i]
        grad[i] = (_eval(field, p + e) - _eval(field, p - e)) / (2.0 * h[i])
    return grad


def fd_hessian(field: Callable, p, cfg: FDConfig = HESSIAN_CONFIG) -> np.ndarray:
    """Full symmetric matrix from central second and four-point cross differences."""
    p = np.asarray(p, dtype=float)
    n = p.size
    h = cfg.steps(p)
    f0 = _eval(field, p)
    H = np.empty((n, n))
    basis = np.diag(h)
    for i in range(n):
        ei = basis[i]
        H[i, i] = (_eval(field, p + ei) - 2.0 * f0 + _eval(field, p - ei)) / (h[i] * h[i])
        for j in range(i + 1, n):
            ej = basis[j]
            H[i, j] = (
                _eval(field, p + ei + ej)
                - _eval(field, p + ei - ej)
                - _eval(field, p - ei + ej)
                + _eval(field, p - ei - ej)
            ) / (4.0 * h[i] * h[j])
            H[j, i] = H[i, j]
    return 0.5 * (H + H.T)
