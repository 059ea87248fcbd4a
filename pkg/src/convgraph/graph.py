"""Directed weighted conversation graphs and the spectral primitives built on them.

A ConvGraph is immutable after construction: node order is significant (it
fixes matrix row order and every seeded stream derived from node indices),
edges are unique per ordered pair, weights strictly positive, and one node is
distinguished as the target (the author of the message under classification).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import SpectralError

__all__ = [
    "ConvGraph",
    "Spectrum",
    "collapse",
    "normalized_laplacian_spectrum",
    "laplacian_pseudoinverse",
    "effective_resistance",
    "heat_kernel",
    "connected_components",
    "read_graph_json",
    "write_graph_json",
]

# relative cutoff for treating an eigenvalue as zero
ZERO_EIG_RTOL = 1e-9


@dataclass(frozen=True)
class ConvGraph:
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], float]
    target: str
    meta: dict[str, Any] = field(default_factory=dict)
    directed: bool = True
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.nodes)}
        if len(index) != len(self.nodes):
            raise ValueError("duplicate node ids")
        if self.target not in index:
            raise ValueError(f"target {self.target!r} not among nodes")
        for (u, v), w in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in index or v not in index:
                raise ValueError(f"edge endpoint missing from nodes: {(u, v)}")
            if not (w > 0 and np.isfinite(w)):
                raise ValueError(f"edge {(u, v)} has non-positive weight {w}")
            if not self.directed and index[u] > index[v]:
                raise ValueError("undirected edges must be stored with src index < dst index")
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index(self, node: str) -> int:
        return self._index[node]

    def weight_matrix(self) -> np.ndarray:
        """Dense weight matrix in node order; symmetric when undirected."""
        w = np.zeros((self.n, self.n))
        for (u, v), wt in self.edges.items():
            i, j = self._index[u], self._index[v]
            w[i, j] = wt
            if not self.directed:
                w[j, i] = wt
        return w

    def relabeled(self, mapping: Mapping[str, str]) -> "ConvGraph":
        """Rename node ids keeping order, edges and target in place."""
        return ConvGraph(
            nodes=tuple(mapping[v] for v in self.nodes),
            edges={(mapping[u], mapping[v]): w for (u, v), w in self.edges.items()},
            target=mapping[self.target],
            meta=dict(self.meta),
            directed=self.directed,
        )

    def permuted(self, order: Iterable[int]) -> "ConvGraph":
        """Reorder the node list by position (graph is unchanged up to storage)."""
        order = list(order)
        nodes = tuple(self.nodes[i] for i in order)
        pos = {v: k for k, v in enumerate(nodes)}
        edges = {}
        for (u, v), w in self.edges.items():
            if not self.directed and pos[u] > pos[v]:
                u, v = v, u
            edges[(u, v)] = w
        return ConvGraph(nodes=nodes, edges=edges, target=self.target,
                         meta=dict(self.meta), directed=self.directed)


def collapse(g: ConvGraph, mode: str) -> ConvGraph:
    """Symmetrize a graph. Weighted mode sums w(u->v)+w(v->u); unweighted sets 1.

    Already-undirected graphs pass through (weights reset to 1 in unweighted
    mode), which makes the operation idempotent.
    """
    if mode not in ("undirected_weighted", "undirected_unweighted"):
        raise ValueError(f"unknown collapse mode {mode!r}")
    unweighted = mode == "undirected_unweighted"
    sym: dict[tuple[str, str], float] = {}
    if g.directed:
        for (u, v), w in g.edges.items():
            key = (u, v) if g.index(u) < g.index(v) else (v, u)
            sym[key] = sym.get(key, 0.0) + w
    else:
        sym = dict(g.edges)
    if unweighted:
        sym = {k: 1.0 for k in sym}
    return ConvGraph(nodes=g.nodes, edges=sym, target=g.target,
                     meta=dict(g.meta), directed=False)


def connected_components(g: ConvGraph) -> np.ndarray:
    """Component label per node (direction ignored), labels 0..k-1 in node order."""
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v) in g.edges:
        i, j = g.index(u), g.index(v)
        adj[i].append(j)
        adj[j].append(i)
    labels = np.full(n, -1, dtype=int)
    comp = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = comp
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if labels[j] < 0:
                    labels[j] = comp
                    stack.append(j)
        comp += 1
    return labels


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray            # ascending
    eigenvectors: np.ndarray | None    # orthonormal columns, optional


def _require_undirected(g: ConvGraph, op: str) -> None:
    if g.directed:
        raise ValueError(f"{op} requires an undirected graph; collapse() first")


def normalized_laplacian_spectrum(g: ConvGraph, with_vectors: bool = False) -> Spectrum:
    """Spectrum of I - D^{-1/2} W D^{-1/2}; isolated nodes contribute a zero row.

    Eigenvalues come back ascending with near-zero values clipped to exactly 0
    (cutoff ZERO_EIG_RTOL relative to the spectral radius).
    """
    _require_undirected(g, "normalized_laplacian_spectrum")
    w = g.weight_matrix()
    deg = w.sum(axis=1)
    inv_sqrt = np.zeros_like(deg)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    lap = -(inv_sqrt[:, None] * w * inv_sqrt[None, :])
    lap[np.diag_indices_from(lap)] = np.where(nz, 1.0, 0.0)
    try:
        if with_vectors:
            vals, vecs = np.linalg.eigh(lap)
        else:
            vals = np.linalg.eigvalsh(lap)
            vecs = None
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"normalized Laplacian eigendecomposition failed: {exc}") from exc
    radius = float(np.max(np.abs(vals))) if vals.size else 0.0
    tol = ZERO_EIG_RTOL * radius
    vals = vals.copy()
    vals[np.abs(vals) <= tol] = 0.0
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def _combinatorial_laplacian(g: ConvGraph) -> np.ndarray:
    w = g.weight_matrix()
    return np.diag(w.sum(axis=1)) - w


def laplacian_pseudoinverse(g: ConvGraph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the weighted Laplacian D - W.

    Works per component automatically: zero modes (one per component) are
    dropped from the inversion, which equals the block-wise pseudoinverse.
    """
    _require_undirected(g, "laplacian_pseudoinverse")
    lap = _combinatorial_laplacian(g)
    try:
        vals, vecs = np.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"Laplacian eigendecomposition failed: {exc}") from exc
    radius = float(np.max(np.abs(vals))) if vals.size else 0.0
    tol = ZERO_EIG_RTOL * radius
    inv = np.where(vals > tol, 1.0 / np.where(vals > tol, vals, 1.0), 0.0)
    return (vecs * inv) @ vecs.T


def effective_resistance(g: ConvGraph) -> np.ndarray:
    """Pairwise effective resistances; cross-component pairs are +inf."""
    _require_undirected(g, "effective_resistance")
    pinv = laplacian_pseudoinverse(g)
    d = np.diag(pinv)
    r = d[:, None] + d[None, :] - 2.0 * pinv
    np.fill_diagonal(r, 0.0)
    labels = connected_components(g)
    cross = labels[:, None] != labels[None, :]
    r[cross] = np.inf
    return r


def heat_kernel(g: ConvGraph, s: float, mode: str = "exact", order: int = 100) -> np.ndarray:
    """exp(-s L) for the weighted Laplacian L = D - W.

    exact mode goes through a full eigendecomposition; chebyshev mode expands
    e^{-s x} on [0, 2*max_degree] (Gershgorin bound) with a polynomial of the
    given order and never factorizes the matrix.
    """
    _require_undirected(g, "heat_kernel")
    if not s > 0:
        raise ValueError(f"heat coefficient must be positive, got {s}")
    lap = _combinatorial_laplacian(g)
    if mode == "exact":
        try:
            vals, vecs = np.linalg.eigh(lap)
        except np.linalg.LinAlgError as exc:
            raise SpectralError(f"heat kernel eigendecomposition failed: {exc}") from exc
        return (vecs * np.exp(-s * vals)) @ vecs.T
    if mode != "chebyshev":
        raise ValueError(f"unknown heat kernel mode {mode!r}")
    if order < 1:
        raise ValueError("chebyshev order must be >= 1")
    lmax = 2.0 * float(np.max(np.diag(lap))) if g.n else 0.0
    if lmax <= 0:  # edgeless graph: L = 0, kernel is the identity
        return np.eye(g.n)
    # interpolate f on [-1, 1] after the affine map x -> (x+1) * lmax / 2
    coef = np.polynomial.chebyshev.chebinterpolate(
        lambda x: np.exp(-s * (x + 1.0) * lmax / 2.0), order
    )
    scaled = (2.0 / lmax) * lap - np.eye(g.n)
    t_prev = np.eye(g.n)
    t_cur = scaled
    out = coef[0] * t_prev + (coef[1] * t_cur if order >= 1 else 0.0)
    for k in range(2, order + 1):
        t_next = 2.0 * scaled @ t_cur - t_prev
        out += coef[k] * t_next
        t_prev, t_cur = t_cur, t_next
    return out


# --- JSON interchange -------------------------------------------------------

def graph_to_dict(g: ConvGraph) -> dict[str, Any]:
    order = sorted(g.edges, key=lambda e: (g.index(e[0]), g.index(e[1])))
    return {
        "nodes": list(g.nodes),
        "edges": [{"src": u, "dst": v, "w": g.edges[(u, v)]} for u, v in order],
        "target": g.target,
        "meta": g.meta,
        "directed": g.directed,
    }


def graph_from_dict(d: Mapping[str, Any]) -> ConvGraph:
    return ConvGraph(
        nodes=tuple(d["nodes"]),
        edges={(e["src"], e["dst"]): float(e["w"]) for e in d["edges"]},
        target=d["target"],
        meta=dict(d.get("meta", {})),
        directed=bool(d.get("directed", True)),
    )


def write_graph_json(g: ConvGraph, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(graph_to_dict(g), sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def read_graph_json(path: str | Path) -> ConvGraph:
    return graph_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
