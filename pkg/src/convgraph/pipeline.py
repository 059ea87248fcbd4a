"""Stage functions shared by the CLI: fan work out across graphs, move
matrices through CSV files, and keep every stage a pure function of
(inputs, seed) so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .analysis import Representation
from .corpus import LabeledMessage
from .embeddings import (BoostNEConfig, DeepWalkConfig, GraphWaveConfig,
                         Graph2vecConfig, Node2vecConfig, WalkletsConfig,
                         boostne, deepwalk, graph2vec, graphwave, node2vec,
                         sf_embed, walklets)
from .embeddings.types import EmbeddingVector
from .embeddings.wholegraph import FGSDConfig, SFConfig, fgsd_embed
from .extract import ExtractConfig, extract_graph
from .features import ALL_FEATURES, compute_features
from .graph import ConvGraph, read_graph_json, write_graph_json

NODE_METHODS = ("deepwalk", "node2vec", "walklets", "boostne", "graphwave")
WHOLE_GRAPH_METHODS = ("sf", "fgsd", "graph2vec")
ALL_METHODS = WHOLE_GRAPH_METHODS + NODE_METHODS

METHOD_SCALE = {m: ("whole-graph" if m in WHOLE_GRAPH_METHODS else "node")
                for m in ALL_METHODS}

DEFAULT_CONFIGS: dict[str, object] = {
    "deepwalk": DeepWalkConfig(), "node2vec": Node2vecConfig(),
    "walklets": WalkletsConfig(), "boostne": BoostNEConfig(),
    "graphwave": GraphWaveConfig(), "sf": SFConfig(), "fgsd": FGSDConfig(),
    "graph2vec": Graph2vecConfig(),
}

_PER_GRAPH: dict[str, Callable] = {
    "deepwalk": lambda g, cfg, seed: deepwalk(g, cfg, seed),
    "node2vec": lambda g, cfg, seed: node2vec(g, cfg, seed),
    "walklets": lambda g, cfg, seed: walklets(g, cfg, seed),
    "boostne": lambda g, cfg, seed: boostne(g, cfg, seed),
    "graphwave": lambda g, cfg, seed: graphwave(g, cfg, seed),
    "sf": lambda g, cfg, seed: sf_embed(g, cfg.dimensions),
    "fgsd": lambda g, cfg, seed: fgsd_embed(g, cfg),
}


def default_jobs() -> int:
    return max(1, os.cpu_count() or 1)


def extract_all(corpus: Sequence[LabeledMessage], dataset: Sequence[LabeledMessage],
                cfg: ExtractConfig, out_dir: str | Path) -> dict[str, Path]:
    """One graph JSON per targeted message, named by message id."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for m in dataset:
        g = extract_graph(corpus, m.message.id, cfg)
        path = out / f"{m.message.id}.graph.json"
        write_graph_json(g, path)
        paths[m.message.id] = path
    return paths


def load_graphs(graph_dir: str | Path) -> dict[str, ConvGraph]:
    out = {}
    for path in sorted(Path(graph_dir).glob("*.graph.json")):
        gid = path.name[: -len(".graph.json")]
        out[gid] = read_graph_json(path)
    return out


def _embed_one(args: tuple) -> tuple[str, np.ndarray]:
    gid, graph, method, cfg, seed = args
    vec = _PER_GRAPH[method](graph, cfg, seed)
    return gid, vec.values


def embed_graphs(graphs: Mapping[str, ConvGraph], method: str, cfg,
                 seed: int, jobs: int = 1) -> Representation:
    """Embed every graph with one method; the same seed is reused per graph
    so seeded initialization streams line up across graphs."""
    ids = sorted(graphs)
    if method == "graph2vec":
        vectors = graph2vec({gid: graphs[gid] for gid in ids}, cfg, seed)
        matrix = np.vstack([vectors[gid].values for gid in ids])
    else:
        tasks = [(gid, graphs[gid], method, cfg, seed) for gid in ids]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = dict(pool.map(_embed_one, tasks, chunksize=4))
        else:
            results = dict(map(_embed_one, tasks))
        matrix = np.vstack([results[gid] for gid in ids])
    columns = tuple(f"v_{k}" for k in range(matrix.shape[1]))
    return Representation(ids=tuple(ids), matrix=matrix, columns=columns,
                          source=method)


def _features_one(args: tuple) -> tuple[str, np.ndarray]:
    gid, graph = args
    return gid, compute_features(graph).values


def features_representation(graphs: Mapping[str, ConvGraph],
                            jobs: int = 1) -> Representation:
    ids = sorted(graphs)
    tasks = [(gid, graphs[gid]) for gid in ids]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_features_one, tasks, chunksize=4))
    else:
        results = dict(map(_features_one, tasks))
    matrix = np.vstack([results[gid] for gid in ids])
    return Representation(ids=tuple(ids), matrix=matrix,
                          columns=tuple(ALL_FEATURES), source="topo")


def write_features_matrix_csv(rep: Representation, path: str | Path) -> None:
    """Feature rows keyed by graph id; header row carries the measure names."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("graph_id",) + tuple(rep.columns))
        for i, gid in enumerate(rep.ids):
            writer.writerow([gid] + [repr(float(x)) for x in rep.matrix[i]])


def write_embedding_csv(rep: Representation, method: str, path: str | Path) -> None:
    """Schema: graph_id, method, dim, v_0..v_{d-1}."""
    d = rep.matrix.shape[1]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["graph_id", "method", "dim"] + [f"v_{k}" for k in range(d)])
        for i, gid in enumerate(rep.ids):
            writer.writerow([gid, method, d] + [repr(float(x)) for x in rep.matrix[i]])


def read_embedding_csv(path: str | Path) -> Representation:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        ids, rows, method = [], [], ""
        for row in reader:
            ids.append(row[0])
            method = row[1]
            rows.append([float(x) for x in row[3:]])
    matrix = np.array(rows, dtype=float)
    return Representation(ids=tuple(ids), matrix=matrix,
                          columns=tuple(header[3:]), source=method or "embedding")


def embedding_vector_of(rep: Representation, gid: str, method: str) -> EmbeddingVector:
    return EmbeddingVector(rep.matrix[rep.ids.index(gid)], method, rep.source)
