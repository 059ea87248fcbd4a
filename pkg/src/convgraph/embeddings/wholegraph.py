"""Whole-graph embeddings: Laplacian spectra, resistance histograms, and a
document-style model over rooted-subgraph tokens.

Spectral outputs are quantized at 1e-12 so that node permutations, which
perturb LAPACK results in the last few ulps, cannot flip a histogram bin or
an eigenvalue entry: relabeled graphs embed byte-identically.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import EmptyVocabulary
from ..graph import ConvGraph, collapse, effective_resistance, \
    normalized_laplacian_spectrum
from ..util import rng_for
from .skipgram import (init_input_vectors, noise_distribution, sgd_epoch,
                       LR_FLOOR_FACTOR)
from .types import EmbeddingVector, fingerprint_of

__all__ = ["SFConfig", "FGSDConfig", "Graph2vecConfig", "SubgraphToken",
           "sf_embed", "fgsd_embed", "wl_tokens", "graph2vec"]

QUANTUM_DECIMALS = 12


@dataclass(frozen=True)
class SFConfig:
    dimensions: int = 128


@dataclass(frozen=True)
class FGSDConfig:
    hist_bins: int = 200
    hist_range: float = 10.0      # histogram spans [0, hist_range]


@dataclass(frozen=True)
class Graph2vecConfig:
    dimensions: int = 128
    wl_iterations: int = 1
    epochs: int = 12
    learning_rate: float = 0.06
    down_sampling: float = 1e-4
    min_count: int = 1
    negative: int = 5
    batch_size: int = 1024
    label_mode: str = "author"    # "author" | "degree"


@dataclass(frozen=True)
class SubgraphToken:
    label: str
    iteration: int


def sf_embed(g: ConvGraph, dimensions: int = 128) -> EmbeddingVector:
    """k smallest strictly positive normalized-Laplacian eigenvalues, ascending.

    Zero eigenvalues (one per connected component) are dropped; if fewer than
    k positive eigenvalues exist the vector is right-padded with zeros.
    """
    if dimensions < 1:
        raise ValueError("dimensions must be >= 1")
    und = collapse(g, "undirected_unweighted")
    spectrum = normalized_laplacian_spectrum(und)
    positive = spectrum.eigenvalues[spectrum.eigenvalues > 0]
    positive = np.round(positive, QUANTUM_DECIMALS)
    values = np.zeros(dimensions)
    k = min(dimensions, positive.size)
    values[:k] = positive[:k]
    return EmbeddingVector(values, "sf", fingerprint_of("sf", dimensions=dimensions))


def fgsd_embed(g: ConvGraph, cfg: FGSDConfig = FGSDConfig()) -> EmbeddingVector:
    """Histogram of pairwise effective resistances over [0, hist_range].

    Every unordered node pair contributes one count; distances beyond the
    range, including infinite cross-component ones, land in the last bin.
    """
    und = collapse(g, "undirected_weighted")
    r = effective_resistance(und)
    iu = np.triu_indices(und.n, k=1)
    d = r[iu]
    d = np.where(np.isfinite(d), d, cfg.hist_range)
    d = np.round(d, QUANTUM_DECIMALS)
    d = np.minimum(d, cfg.hist_range)
    edges = np.linspace(0.0, cfg.hist_range, cfg.hist_bins + 1)
    counts, _ = np.histogram(d, bins=edges)
    return EmbeddingVector(counts.astype(float), "fgsd",
                           fingerprint_of("fgsd", **vars(cfg)))


def _degree_labels(und: ConvGraph) -> dict[str, str]:
    w = und.weight_matrix() > 0
    deg = w.sum(axis=1)
    return {v: str(int(deg[und.index(v)])) for v in und.nodes}


def wl_tokens(g: ConvGraph, wl_iterations: int,
              node_labels: Mapping[str, str] | str = "author",
              ) -> list[SubgraphToken]:
    """Rooted-subgraph token multiset, all refinement iterations pooled.

    Iteration-0 tokens are the raw node labels ("author" = node ids,
    "degree" = undirected degrees); iteration i hashes (own label, sorted
    neighbor labels) from iteration i-1.
    """
    if wl_iterations < 0:
        raise ValueError("wl_iterations must be >= 0")
    und = collapse(g, "undirected_unweighted")
    if node_labels == "author":
        labels = {v: v for v in und.nodes}
    elif node_labels == "degree":
        labels = _degree_labels(und)
    elif isinstance(node_labels, str):
        raise ValueError(f"unknown label mode {node_labels!r}")
    else:
        labels = {v: str(node_labels[v]) for v in und.nodes}

    nbrs: dict[str, list[str]] = {v: [] for v in und.nodes}
    for (u, v) in und.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    tokens = [SubgraphToken(labels[v], 0) for v in und.nodes]
    current = dict(labels)
    for it in range(1, wl_iterations + 1):
        refined: dict[str, str] = {}
        for v in und.nodes:
            material = current[v] + "|" + ",".join(sorted(current[u] for u in nbrs[v]))
            refined[v] = hashlib.sha1(material.encode("utf-8")).hexdigest()[:16]
        current = refined
        tokens.extend(SubgraphToken(current[v], it) for v in und.nodes)
    return tokens


def _keep_probability(freq: np.ndarray, sample: float) -> np.ndarray:
    """word2vec-style subsampling of frequent tokens."""
    if sample <= 0:
        return np.ones_like(freq)
    ratio = sample / np.maximum(freq, 1e-300)
    return np.minimum(1.0, np.sqrt(ratio) + ratio)


def graph2vec(graphs: Mapping[str, ConvGraph],
              cfg: Graph2vecConfig = Graph2vecConfig(),
              seed: int = 0) -> dict[str, EmbeddingVector]:
    """Train jointly over the corpus; each graph's vector predicts its tokens.

    Transductive by design: the whole corpus is embedded in one unsupervised
    pass and classification splits happen downstream.
    """
    graph_ids = sorted(graphs)
    docs: list[list[str]] = []
    for gid in graph_ids:
        toks = wl_tokens(graphs[gid], cfg.wl_iterations, cfg.label_mode)
        docs.append([f"{t.iteration}:{t.label}" for t in toks])

    counts: dict[str, int] = {}
    for doc in docs:
        for tok in doc:
            counts[tok] = counts.get(tok, 0) + 1
    vocab = [t for t in dict.fromkeys(t for doc in docs for t in doc)
             if counts[t] >= cfg.min_count]
    if not vocab:
        raise EmptyVocabulary(
            f"no token reaches min_count={cfg.min_count} over {len(docs)} graphs")
    tok2idx = {t: i for i, t in enumerate(vocab)}

    doc_tokens = [np.array([tok2idx[t] for t in doc if t in tok2idx], dtype=np.int64)
                  for doc in docs]
    all_pairs = np.concatenate([
        np.stack([np.full(len(toks), di, dtype=np.int64), toks], axis=1)
        for di, toks in enumerate(doc_tokens) if len(toks)
    ])

    count_arr = np.array([counts[t] for t in vocab], dtype=float)
    noise = noise_distribution(count_arr)
    total = count_arr.sum()
    keep = _keep_probability(count_arr / total, cfg.down_sampling)

    in_vectors = init_input_vectors(len(graph_ids), cfg.dimensions, seed) \
        .astype(np.float32)
    out_vectors = np.zeros((len(vocab), cfg.dimensions), dtype=np.float32)
    rng = rng_for(seed, "g2v-train")
    lr0 = cfg.learning_rate
    floor = lr0 * LR_FLOOR_FACTOR
    for epoch in range(cfg.epochs):
        mask = rng.random(len(all_pairs)) < keep[all_pairs[:, 1]]
        pairs = all_pairs[mask]
        if len(pairs) == 0:
            continue
        pairs = pairs[rng.permutation(len(pairs))]
        negatives = rng.choice(len(vocab), size=(len(pairs), cfg.negative), p=noise)
        lr_start = lr0 + (floor - lr0) * (epoch / cfg.epochs)
        lr_end = lr0 + (floor - lr0) * ((epoch + 1) / cfg.epochs)
        sgd_epoch(in_vectors, out_vectors, pairs, negatives,
                  lr_start, lr_end, cfg.batch_size)

    fp = fingerprint_of("graph2vec", **vars(cfg), seed=seed)
    return {gid: EmbeddingVector(in_vectors[i].astype(float), "graph2vec", fp)
            for i, gid in enumerate(graph_ids)}
