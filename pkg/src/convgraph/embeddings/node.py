"""Node-scale embeddings; the pipeline keeps the target node's vector only.

All methods reorder the vocabulary target-first before any seeded
initialization, so the target's starting vector is identical across graphs
embedded with the same seed. That keeps per-graph trainings comparable when
the vectors are later stacked into one classification matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import ConvGraph, collapse, heat_kernel
from .nmf import boosted_factorize
from .skipgram import SkipGramConfig, SkipGramModel, skipgram_train
from .types import EmbeddingVector, fingerprint_of
from .walks import random_walks

__all__ = ["DeepWalkConfig", "Node2vecConfig", "WalkletsConfig",
           "BoostNEConfig", "GraphWaveConfig", "deepwalk", "node2vec",
           "walklets", "boostne", "graphwave", "deepwalk_model",
           "node2vec_model", "graphwave_node_vectors"]


@dataclass(frozen=True)
class DeepWalkConfig:
    dimensions: int = 128
    window_size: int = 10
    walk_number: int = 5
    walk_length: int = 80
    learning_rate: float = 0.05
    min_count: int = 1
    epochs: int = 10
    negative: int = 5


@dataclass(frozen=True)
class Node2vecConfig:
    dimensions: int = 128
    window_size: int = 10
    walk_number: int = 10
    walk_length: int = 20
    p: float = 0.95
    q: float = 1.0
    learning_rate: float = 0.05
    min_count: int = 1
    epochs: int = 10
    negative: int = 5


@dataclass(frozen=True)
class WalkletsConfig:
    dimensions: int = 32
    window_size: int = 4          # number of scales; total dim = dimensions * window_size
    walk_number: int = 5
    walk_length: int = 80
    learning_rate: float = 0.05
    min_count: int = 1
    epochs: int = 10
    negative: int = 5


@dataclass(frozen=True)
class BoostNEConfig:
    dimensions: int = 8
    iterations: int = 16          # boosting stages beyond the base factorization
    order: int = 1                # powers of the transition matrix averaged into M
    alpha: float = 0.01
    inner_iterations: int = 200


@dataclass(frozen=True)
class GraphWaveConfig:
    dimensions: int = 100         # sample points; output is 2x (Re, Im interleaved)
    step_size: float = 0.2
    heat_coefficient: float = 0.5
    approximation: int = 100      # chebyshev order above the switch size
    switch: int = 1000


def _target_first(g: ConvGraph) -> tuple[str, ...]:
    return (g.target,) + tuple(v for v in g.nodes if v != g.target)


def _sg_config(cfg, window_size: int | None = None) -> SkipGramConfig:
    return SkipGramConfig(
        dimensions=cfg.dimensions,
        window_size=cfg.window_size if window_size is None else window_size,
        learning_rate=cfg.learning_rate, epochs=cfg.epochs,
        min_count=cfg.min_count, negative=cfg.negative)


def deepwalk_model(g: ConvGraph, cfg: DeepWalkConfig = DeepWalkConfig(),
                   seed: int = 0) -> SkipGramModel:
    vocab = _target_first(g)
    corpus = random_walks(g, cfg.walk_number, cfg.walk_length, bias="uniform",
                          seed=seed, origins=vocab)
    return skipgram_train(corpus.walks, _sg_config(cfg), seed=seed, vocab=vocab)


def deepwalk(g: ConvGraph, cfg: DeepWalkConfig = DeepWalkConfig(),
             seed: int = 0) -> EmbeddingVector:
    model = deepwalk_model(g, cfg, seed)
    return EmbeddingVector(model.vector(g.target), "deepwalk",
                           fingerprint_of("deepwalk", **vars(cfg), seed=seed))


def node2vec_model(g: ConvGraph, cfg: Node2vecConfig = Node2vecConfig(),
                   seed: int = 0) -> SkipGramModel:
    vocab = _target_first(g)
    corpus = random_walks(g, cfg.walk_number, cfg.walk_length, bias="node2vec",
                          p=cfg.p, q=cfg.q, seed=seed, origins=vocab)
    return skipgram_train(corpus.walks, _sg_config(cfg), seed=seed, vocab=vocab)


def node2vec(g: ConvGraph, cfg: Node2vecConfig = Node2vecConfig(),
             seed: int = 0) -> EmbeddingVector:
    model = node2vec_model(g, cfg, seed)
    return EmbeddingVector(model.vector(g.target), "node2vec",
                           fingerprint_of("node2vec", **vars(cfg), seed=seed))


def walklets(g: ConvGraph, cfg: WalkletsConfig = WalkletsConfig(),
             seed: int = 0) -> EmbeddingVector:
    """One SkipGram per skip scale k = 1..window_size; concatenated output.

    The scale-k corpus takes every k-th node of each walk, once per offset,
    so adjacent tokens sit exactly k steps apart in the original walk; each
    scale trains with window 1 on its own corpus.
    """
    vocab = _target_first(g)
    corpus = random_walks(g, cfg.walk_number, cfg.walk_length, bias="uniform",
                          seed=seed, origins=vocab)
    parts = []
    for scale in range(1, cfg.window_size + 1):
        sub = [walk[off::scale] for walk in corpus.walks for off in range(scale)]
        sub = [s for s in sub if s]
        model = skipgram_train(sub, _sg_config(cfg, window_size=1),
                               seed=seed + scale, vocab=vocab)
        parts.append(model.vector(g.target))
    return EmbeddingVector(np.concatenate(parts), "walklets",
                           fingerprint_of("walklets", **vars(cfg), seed=seed))


def _connectivity_matrix(g: ConvGraph, order: int) -> np.ndarray:
    """Average of the first `order` powers of the row-normalized adjacency."""
    und = collapse(g, "undirected_weighted")
    w = und.weight_matrix()
    rowsum = w.sum(axis=1, keepdims=True)
    p = np.divide(w, rowsum, out=np.zeros_like(w), where=rowsum > 0)
    acc = np.zeros_like(p)
    power = np.eye(len(p))
    for _ in range(order):
        power = power @ p
        acc += power
    return acc / order


def boostne(g: ConvGraph, cfg: BoostNEConfig = BoostNEConfig(),
            seed: int = 0) -> EmbeddingVector:
    """Concatenated target rows of the boosted factor sequence: d*(stages+1)."""
    vocab = _target_first(g)
    perm = [g.index(v) for v in vocab]
    m = _connectivity_matrix(g, cfg.order)[np.ix_(perm, perm)]
    factors, _ = boosted_factorize(m, cfg.dimensions, cfg.alpha,
                                   cfg.iterations, cfg.inner_iterations, seed)
    values = np.concatenate([w[0] for w in factors])  # target row is 0 after perm
    return EmbeddingVector(values, "boostne",
                           fingerprint_of("boostne", **vars(cfg), seed=seed))


def graphwave_node_vectors(g: ConvGraph, cfg: GraphWaveConfig = GraphWaveConfig()
                           ) -> np.ndarray:
    """Characteristic-function embedding for every node, rows in node order."""
    und = collapse(g, "undirected_weighted")
    if und.n <= cfg.switch:
        kernel = heat_kernel(und, cfg.heat_coefficient, mode="exact")
    else:
        kernel = heat_kernel(und, cfg.heat_coefficient, mode="chebyshev",
                             order=cfg.approximation)
    t = np.arange(cfg.dimensions) * cfg.step_size
    # phi_a(t) = mean_v exp(i t psi_a(v)) over the wavelet column of a
    phase = np.exp(1j * kernel[:, :, None] * t[None, None, :])
    phi = phase.mean(axis=0)                      # (n nodes, n samples)
    out = np.empty((g.n, 2 * cfg.dimensions))
    out[:, 0::2] = phi.real
    out[:, 1::2] = phi.imag
    return out


def graphwave(g: ConvGraph, cfg: GraphWaveConfig = GraphWaveConfig(),
              seed: int = 0) -> EmbeddingVector:
    vectors = graphwave_node_vectors(g, cfg)
    return EmbeddingVector(vectors[g.index(g.target)], "graphwave",
                           fingerprint_of("graphwave", **vars(cfg)))
