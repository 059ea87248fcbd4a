"""Common embedding output type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    method: str
    fingerprint: str      # compact config identity, e.g. "node2vec:d=128,p=0.95,..."

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"{self.method} produced non-finite entries")

    def __len__(self) -> int:
        return len(self.values)


def fingerprint_of(method: str, **params) -> str:
    inner = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{method}:{inner}"
