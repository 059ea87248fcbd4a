"""Nonnegative matrix factorization by multiplicative updates, plus the
boosted residual cascade.

The objective is 0.5 * ||M - WH||_F^2 + 0.5 * alpha * (||W||_F^2 + ||H||_F^2).
Multiplicative updates never increase it; the residual of each boosting stage
is clamped at zero, so stage norms cannot grow either.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateMatrix
from ..util import rng_for

__all__ = ["nmf", "boosted_factorize", "nmf_objective"]

EPS = 1e-12


def nmf_objective(m: np.ndarray, w: np.ndarray, h: np.ndarray, alpha: float) -> float:
    resid = m - w @ h
    return 0.5 * float((resid * resid).sum()) \
        + 0.5 * alpha * (float((w * w).sum()) + float((h * h).sum()))


def nmf(m: np.ndarray, rank: int, alpha: float, n_iter: int, seed: int,
        ) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """L2-regularized NMF; returns (W, H, objective after each half-update)."""
    m = np.asarray(m, dtype=float)
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise ValueError("NMF target must be nonnegative and finite")
    rows, cols = m.shape
    rng = rng_for(seed, "nmf-init")
    w = rng.uniform(0.0, 1.0, (rows, rank))
    h = rng.uniform(0.0, 1.0, (rank, cols))
    trajectory = [nmf_objective(m, w, h, alpha)]
    for _ in range(n_iter):
        w *= (m @ h.T) / np.maximum(w @ (h @ h.T) + alpha * w, EPS)
        trajectory.append(nmf_objective(m, w, h, alpha))
        h *= (w.T @ m) / np.maximum((w.T @ w) @ h + alpha * h, EPS)
        trajectory.append(nmf_objective(m, w, h, alpha))
    return w, h, trajectory


def boosted_factorize(m: np.ndarray, rank: int, alpha: float, stages: int,
                      n_iter: int, seed: int,
                      ) -> tuple[list[np.ndarray], list[float]]:
    """Factorize M, then repeatedly the clamped residual.

    stages counts the factorizations beyond the first, so the factor list has
    stages + 1 entries. The returned norms track the residual before and
    after every stage (starting at ||M||_F), one more entry than factors.
    """
    m = np.asarray(m, dtype=float)
    if not np.any(m > 0):
        raise DegenerateMatrix("connectivity matrix is all-zero")
    residual = m.copy()
    factors: list[np.ndarray] = []
    norms = [float(np.linalg.norm(residual))]
    for stage in range(stages + 1):
        w, h, _ = nmf(residual, rank, alpha, n_iter, rng_for(seed, "boost", stage)
                      .integers(0, 2**63 - 1))
        factors.append(w)
        residual = np.maximum(residual - w @ h, 0.0)
        norms.append(float(np.linalg.norm(residual)))
    return factors, norms
