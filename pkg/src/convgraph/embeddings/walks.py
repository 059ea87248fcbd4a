"""Random-walk sampling over conversation graphs.

Uniform walks run on the unweighted undirected collapse, second-order biased
walks on the weighted undirected collapse. Each walk draws from its own
generator seeded by (seed, origin position, walk index), so corpora are
reproducible and independent of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..graph import ConvGraph, collapse
from ..util import rng_for

__all__ = ["WalkCorpus", "random_walks"]


@dataclass(frozen=True)
class WalkCorpus:
    walks: tuple[tuple[str, ...], ...]
    origins: tuple[str, ...]          # one origin per walk, = walk[0]
    fingerprint: str


def _neighbor_arrays(g: ConvGraph) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """(neighbor index arrays, weight arrays) per node, sorted by neighbor index."""
    n = g.n
    nbrs: list[dict[int, float]] = [{} for _ in range(n)]
    for (u, v), w in g.edges.items():
        i, j = g.index(u), g.index(v)
        nbrs[i][j] = w
        nbrs[j][i] = w
    idx_arrays = []
    w_arrays = []
    for d in nbrs:
        ks = np.array(sorted(d), dtype=int)
        idx_arrays.append(ks)
        w_arrays.append(np.array([d[k] for k in ks], dtype=float))
    return idx_arrays, w_arrays


def random_walks(g: ConvGraph, walk_number: int, walk_length: int,
                 bias: str = "uniform", p: float = 1.0, q: float = 1.0,
                 seed: int = 0, origins: Sequence[str] | None = None) -> WalkCorpus:
    """walk_number walks from every origin, each of up to walk_length nodes.

    bias="uniform": next node drawn uniformly from neighbors (unweighted view).
    bias="node2vec": unnormalized step score w(cur, x) * (1/p if x is the
    previous node, 1 if x neighbors the previous node, 1/q otherwise).
    Isolated origins yield single-node walks.
    """
    if bias not in ("uniform", "node2vec"):
        raise ValueError(f"unknown walk bias {bias!r}")
    if walk_number < 1 or walk_length < 1:
        raise ValueError("walk_number and walk_length must be >= 1")
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")

    mode = "undirected_unweighted" if bias == "uniform" else "undirected_weighted"
    und = collapse(g, mode)
    nbr_idx, nbr_w = _neighbor_arrays(und)
    nbr_sets = [set(a.tolist()) for a in nbr_idx]
    if origins is None:
        origins = und.nodes
    origin_idx = [und.index(v) for v in origins]

    walks: list[tuple[str, ...]] = []
    walk_origins: list[str] = []
    for pos, start in enumerate(origin_idx):
        for wi in range(walk_number):
            rng = rng_for(seed, "walk", pos, wi)
            walk = [start]
            while len(walk) < walk_length:
                cur = walk[-1]
                neigh = nbr_idx[cur]
                if neigh.size == 0:
                    break
                if bias == "uniform":
                    nxt = int(neigh[rng.integers(neigh.size)])
                elif len(walk) == 1:
                    probs = nbr_w[cur] / nbr_w[cur].sum()
                    nxt = int(neigh[rng.choice(neigh.size, p=probs)])
                else:
                    prev = walk[-2]
                    scores = nbr_w[cur].copy()
                    for k, x in enumerate(neigh):
                        if x == prev:
                            scores[k] /= p
                        elif x not in nbr_sets[prev]:
                            scores[k] /= q
                    probs = scores / scores.sum()
                    nxt = int(neigh[rng.choice(neigh.size, p=probs)])
                walk.append(nxt)
            walks.append(tuple(und.nodes[i] for i in walk))
            walk_origins.append(und.nodes[start])

    fp = f"bias={bias},p={p},q={q},n={walk_number},l={walk_length},seed={seed}"
    return WalkCorpus(walks=tuple(walks), origins=tuple(walk_origins), fingerprint=fp)
