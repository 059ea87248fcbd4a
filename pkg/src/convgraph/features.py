"""Topological measures of conversation graphs, at graph and node scale.

Node-scale measures are reported twice: evaluated at the target node and
averaged over all nodes (the average counts as a graph-scale description).
The nine Top Features used by the capture analysis are a fixed subset, four
at graph scale followed by five at node scale.

Conventions: PageRank and HITS run on the directed weighted graph, closeness
/ betweenness / eccentricity / coreness / transitivity on the unweighted
undirected collapse, modularity and participation on the weighted undirected
collapse. Closeness uses the reachable-set scaling ((r-1)/(n-1)) * ((r-1)/sum d)
so disconnected graphs stay finite.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import UndefinedMeasure
from .graph import ConvGraph, collapse

__all__ = ["FeatureVector", "TOP_FEATURES", "GRAPH_MEASURES", "NODE_MEASURES",
           "ALL_FEATURES", "compute_features", "write_features_csv",
           "read_features_csv"]

GRAPH_MEASURES = ("vertex_count", "density", "reciprocity", "transitivity",
                  "diameter", "modularity")
NODE_MEASURES = ("degree", "strength", "closeness", "betweenness",
                 "eccentricity", "coreness", "pagerank", "hub", "authority",
                 "participation")
ALL_FEATURES = tuple(GRAPH_MEASURES) + tuple(
    f"{m}_{suffix}" for m in NODE_MEASURES for suffix in ("target", "mean"))

# four graph-scale features, then five node-scale ones
TOP_FEATURES = ("vertex_count", "closeness_mean", "reciprocity", "coreness_mean",
                "pagerank_target", "closeness_target", "strength_target",
                "hub_target", "authority_target")

PAGERANK_DAMPING = 0.85


@dataclass(frozen=True)
class FeatureVector:
    names: tuple[str, ...]
    values: np.ndarray
    scales: tuple[str, ...]   # "graph" | "node_target" | "node_mean"

    def as_dict(self) -> dict[str, float]:
        return {n: float(v) for n, v in zip(self.names, self.values)}

    def __getitem__(self, name: str) -> float:
        try:
            return float(self.values[self.names.index(name)])
        except ValueError:
            raise UndefinedMeasure(name) from None


# --- primitives on index arrays ----------------------------------------------

def _adjacency_lists(g: ConvGraph) -> list[list[int]]:
    """Neighbor index lists of the undirected view, in node-index order."""
    n = g.n
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for (u, v) in g.edges:
        i, j = g.index(u), g.index(v)
        nbrs[i].add(j)
        nbrs[j].add(i)
    return [sorted(s) for s in nbrs]


def _bfs_distances(adj: Sequence[Sequence[int]], source: int) -> np.ndarray:
    n = len(adj)
    dist = np.full(n, -1, dtype=int)
    dist[source] = 0
    queue = deque([source])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if dist[j] < 0:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def pagerank(g: ConvGraph, damping: float = PAGERANK_DAMPING,
             tol: float = 1e-14, max_iter: int = 10_000) -> np.ndarray:
    """Weighted out-edge transitions, dangling mass spread uniformly."""
    n = g.n
    w = g.weight_matrix()
    out = w.sum(axis=1)
    dangling = out <= 0
    p = np.zeros_like(w)
    nz = ~dangling
    p[nz] = w[nz] / out[nz, None]
    r = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(max_iter):
        r_new = teleport + damping * (r @ p + r[dangling].sum() / n)
        if np.abs(r_new - r).sum() < tol:
            return r_new
        r = r_new
    return r


def hits(g: ConvGraph, tol: float = 1e-13, max_iter: int = 10_000
         ) -> tuple[np.ndarray, np.ndarray]:
    """Hub and authority scores, L2-normalized; zero vectors on edgeless graphs."""
    n = g.n
    a_mat = g.weight_matrix()
    if not g.directed:
        a_mat = np.maximum(a_mat, a_mat.T)
    if a_mat.sum() == 0:
        return np.zeros(n), np.zeros(n)
    hub = np.full(n, 1.0 / np.sqrt(n))
    auth = np.zeros(n)
    for _ in range(max_iter):
        auth_new = a_mat.T @ hub
        norm = np.linalg.norm(auth_new)
        auth_new = auth_new / norm if norm > 0 else auth_new
        hub_new = a_mat @ auth_new
        norm = np.linalg.norm(hub_new)
        hub_new = hub_new / norm if norm > 0 else hub_new
        if (np.abs(hub_new - hub).max() < tol
                and np.abs(auth_new - auth).max() < tol):
            return hub_new, auth_new
        hub, auth = hub_new, auth_new
    return hub, auth


def coreness(g: ConvGraph) -> np.ndarray:
    """k-core numbers on the unweighted undirected view (peeling)."""
    adj = _adjacency_lists(g)
    n = len(adj)
    degree = np.array([len(a) for a in adj])
    core = np.zeros(n, dtype=int)
    alive = np.ones(n, dtype=bool)
    current = 0
    for _ in range(n):
        candidates = np.where(alive)[0]
        if candidates.size == 0:
            break
        i = candidates[np.argmin(degree[candidates])]
        current = max(current, int(degree[i]))
        core[i] = current
        alive[i] = False
        for j in adj[i]:
            if alive[j]:
                degree[j] -= 1
    return core


def closeness(g: ConvGraph) -> np.ndarray:
    """Reachable-set-scaled closeness on BFS hop distances."""
    adj = _adjacency_lists(g)
    n = len(adj)
    if n <= 1:
        return np.zeros(n)
    out = np.zeros(n)
    for v in range(n):
        dist = _bfs_distances(adj, v)
        reach = dist >= 0
        r = int(reach.sum())           # includes v itself
        total = int(dist[reach].sum())
        if r > 1 and total > 0:
            out[v] = ((r - 1) / (n - 1)) * ((r - 1) / total)
    return out


def eccentricity(g: ConvGraph) -> np.ndarray:
    """Max hop distance to any reachable node (0 for isolated nodes)."""
    adj = _adjacency_lists(g)
    out = np.zeros(len(adj))
    for v in range(len(adj)):
        dist = _bfs_distances(adj, v)
        out[v] = float(dist.max()) if (dist >= 0).any() else 0.0
    return out


def betweenness(g: ConvGraph) -> np.ndarray:
    """Brandes betweenness on the unweighted undirected view, normalized."""
    adj = _adjacency_lists(g)
    n = len(adj)
    bc = np.zeros(n)
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1, dtype=int)
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for u in adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
                if dist[u] == dist[v] + 1:
                    sigma[u] += sigma[v]
                    preds[u].append(v)
        delta = np.zeros(n)
        while stack:
            u = stack.pop()
            for v in preds[u]:
                delta[v] += sigma[v] / sigma[u] * (1.0 + delta[u])
            if u != s:
                bc[u] += delta[u]
        # each undirected pair is counted from both endpoints
    bc /= 2.0
    if n > 2:
        bc /= (n - 1) * (n - 2) / 2.0
    return bc


def reciprocity(g: ConvGraph) -> float:
    """Weight-blind: reciprocated ordered pairs / all connected ordered pairs."""
    if not g.edges:
        return 0.0
    pairs = set(g.edges)
    if not g.directed:
        return 1.0
    recip = sum(1 for (u, v) in pairs if (v, u) in pairs)
    return recip / len(pairs)


def transitivity(g: ConvGraph) -> float:
    """Global clustering: 3 * triangles / connected triads (undirected view)."""
    adj = _adjacency_lists(g)
    deg = np.array([len(a) for a in adj], dtype=float)
    triads = float((deg * (deg - 1) / 2).sum())
    if triads == 0:
        return 0.0
    nbr_sets = [set(a) for a in adj]
    triangles = 0
    for i in range(len(adj)):
        for j in adj[i]:
            if j > i:
                triangles += sum(1 for k in nbr_sets[i] & nbr_sets[j] if k > j)
    return 3.0 * triangles / triads


def strength(g: ConvGraph) -> np.ndarray:
    """Sum of incident in- and out-weights per node."""
    w = g.weight_matrix()
    if g.directed:
        return w.sum(axis=0) + w.sum(axis=1)
    return w.sum(axis=1)


def degree(g: ConvGraph) -> np.ndarray:
    """Edge-count degree (in + out for directed graphs)."""
    w = g.weight_matrix() > 0
    if g.directed:
        return (w.sum(axis=0) + w.sum(axis=1)).astype(float)
    return w.sum(axis=1).astype(float)


def density(g: ConvGraph) -> float:
    n = g.n
    if n <= 1:
        return 0.0
    pairs = n * (n - 1) if g.directed else n * (n - 1) / 2
    return g.n_edges / pairs


def greedy_communities(g: ConvGraph) -> tuple[np.ndarray, float]:
    """Deterministic greedy modularity merge on the weighted undirected view.

    Ties in the merge gain break toward the lowest community index pair.
    Returns (labels, Q).
    """
    und = g if not g.directed else collapse(g, "undirected_weighted")
    w = und.weight_matrix()
    n = und.n
    total = w.sum()  # = 2m for the symmetric matrix
    labels = np.arange(n)
    if total == 0 or n == 0:
        return labels, 0.0
    # community-level aggregates
    e = w.copy()                      # e[c, d] = weight between communities
    a = w.sum(axis=1)                 # a[c] = total degree inside community
    active = list(range(n))
    q = float(np.trace(e) / total - ((a / total) ** 2).sum())
    while len(active) > 1:
        best = (1e-12, None)
        for ci_pos in range(len(active)):
            ci = active[ci_pos]
            for cj_pos in range(ci_pos + 1, len(active)):
                cj = active[cj_pos]
                if e[ci, cj] == 0:
                    continue
                gain = 2.0 * (e[ci, cj] / total - a[ci] * a[cj] / total ** 2)
                if gain > best[0]:
                    best = (gain, (ci, cj))
        if best[1] is None:
            break
        ci, cj = best[1]
        labels[labels == cj] = ci
        e[ci, :] += e[cj, :]
        e[:, ci] += e[:, cj]
        e[cj, :] = 0.0
        e[:, cj] = 0.0
        a[ci] += a[cj]
        a[cj] = 0.0
        active.remove(cj)
        q += best[0]
    # compact labels
    remap = {c: k for k, c in enumerate(sorted(set(labels.tolist())))}
    return np.array([remap[c] for c in labels]), float(q)


def participation(g: ConvGraph, labels: np.ndarray) -> np.ndarray:
    """1 - sum_c (k_{i,c} / k_i)^2 over the weighted undirected view."""
    und = g if not g.directed else collapse(g, "undirected_weighted")
    w = und.weight_matrix()
    k = w.sum(axis=1)
    out = np.zeros(und.n)
    for i in range(und.n):
        if k[i] <= 0:
            continue
        frac = np.array([w[i, labels == c].sum() for c in np.unique(labels)]) / k[i]
        out[i] = 1.0 - float((frac ** 2).sum())
    return out


# --- assembly ----------------------------------------------------------------

def compute_features(g: ConvGraph, which: Iterable[str] | None = None) -> FeatureVector:
    """Deterministic feature vector; node measures at target and as mean."""
    if g.n == 0:
        raise ValueError("graph must be non-empty")
    requested = tuple(which) if which is not None else ALL_FEATURES
    unknown = [name for name in requested if name not in ALL_FEATURES]
    if unknown:
        raise UndefinedMeasure(unknown[0])

    und_u = collapse(g, "undirected_unweighted")
    t = g.index(g.target)
    labels, q_mod = greedy_communities(g)
    hub_vec, auth_vec = hits(g)

    node_values: dict[str, np.ndarray] = {
        "degree": degree(g),
        "strength": strength(g),
        "closeness": closeness(und_u),
        "betweenness": betweenness(und_u),
        "eccentricity": eccentricity(und_u),
        "coreness": coreness(und_u).astype(float),
        "pagerank": pagerank(g),
        "hub": hub_vec,
        "authority": auth_vec,
        "participation": participation(g, labels),
    }
    graph_values: dict[str, float] = {
        "vertex_count": float(g.n),
        "density": density(g),
        "reciprocity": reciprocity(g),
        "transitivity": transitivity(und_u),
        "diameter": float(eccentricity(und_u).max()) if g.n else 0.0,
        "modularity": q_mod,
    }

    names: list[str] = []
    values: list[float] = []
    scales: list[str] = []
    for name in requested:
        if name in graph_values:
            names.append(name)
            values.append(graph_values[name])
            scales.append("graph")
        else:
            base, _, suffix = name.rpartition("_")
            vec = node_values[base]
            if suffix == "target":
                names.append(name)
                values.append(float(vec[t]))
                scales.append("node_target")
            else:
                names.append(name)
                values.append(float(vec.mean()))
                scales.append("node_mean")
    arr = np.array(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        bad = names[int(np.where(~np.isfinite(arr))[0][0])]
        raise ValueError(f"non-finite value for measure {bad!r}")
    return FeatureVector(names=tuple(names), values=arr, scales=tuple(scales))


def write_features_csv(rows: Mapping[str, FeatureVector], path: str | Path) -> None:
    """One row per graph id; column order fixed by ALL_FEATURES."""
    ids = sorted(rows)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        first = rows[ids[0]].names if ids else ALL_FEATURES
        writer.writerow(("graph_id",) + tuple(first))
        for gid in ids:
            writer.writerow([gid] + [repr(float(v)) for v in rows[gid].values])


def read_features_csv(path: str | Path) -> tuple[list[str], list[str], np.ndarray]:
    """Returns (graph_ids, feature_names, matrix)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        ids, data = [], []
        for row in reader:
            ids.append(row[0])
            data.append([float(x) for x in row[1:]])
    return ids, header[1:], np.array(data, dtype=float)
