"""Graph of density topology over local clusters: build, prune, label.

Vertices are local-cluster roots. The connectivity between two clusters sums
the squared density at the midpoint of every boundary pair joining them,
scaled by the squared ratio of their peak densities. Weak edges are cut when
they fall below ``alpha`` times the strongest edge at either endpoint, and
final labels are the connected components of what survives.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from .density import DensityField, density_at
from .growing import NOISE, GrowthResult

__all__ = [
    "Edge",
    "TopoGraph",
    "PruneConfig",
    "Labeling",
    "alpha_from_beta",
    "build_topograph",
    "prune_edges",
    "assign_labels",
    "graph_to_dict",
    "graph_to_json",
]


def _square(x):
    return x * x


def alpha_from_beta(beta: float) -> float:
    """Relative-strength cut threshold ``1 / (sqrt(beta) + 1)`` for a balance weight ``beta``."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return 1.0 / (math.sqrt(beta) + 1.0)


@dataclass(frozen=True)
class PruneConfig:
    alpha: float

    def __post_init__(self):
        if not 0.0 <= float(self.alpha) <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def from_beta(cls, beta: float) -> "PruneConfig":
        return cls(alpha_from_beta(beta))


@dataclass(frozen=True)
class Edge:
    w: float
    gamma: float
    e: float
    kept: bool = True


@dataclass(eq=False)
class TopoGraph:
    """Edges are keyed by ``(a, b)`` with ``a < b``; use :meth:`weight` for symmetric lookup."""

    peaks: dict[int, float]
    sizes: dict[int, int]
    edges: dict[tuple[int, int], Edge] = dc_field(default_factory=dict)
    strongest: dict[int, float] = dc_field(default_factory=dict)
    alpha: float | None = None

    @property
    def vertices(self) -> list[int]:
        return sorted(self.peaks)

    def weight(self, i: int, j: int) -> float:
        edge = self.edges.get((min(i, j), max(i, j)))
        return 0.0 if edge is None else edge.e

    def gamma(self, i: int, j: int) -> float | None:
        edge = self.edges.get((min(i, j), max(i, j)))
        return None if edge is None else edge.gamma

    def kept_edges(self) -> list[tuple[int, int]]:
        return [key for key, edge in self.edges.items() if edge.kept]


def _peak_similarity(fa: float, fb: float) -> float:
    hi, lo = max(fa, fb), min(fa, fb)
    return 1.0 if hi == 0 else _square(lo / hi)


def build_topograph(result: GrowthResult, field: DensityField) -> TopoGraph:
    f = np.asarray(field.f)
    peaks = {r: float(f[r]) for r in result.clusters}
    sizes = {r: len(m) for r, m in result.clusters.items()}
    graph = TopoGraph(peaks=peaks, sizes=sizes, strongest={r: 0.0 for r in peaks})

    pairs = np.asarray(result.boundary_pairs, dtype=np.intp).reshape(-1, 4)
    if pairs.shape[0] == 0:
        return graph
    for r in np.unique(pairs[:, 2:]):
        if int(r) not in peaks:
            raise ValueError(f"boundary pair references unknown local cluster {int(r)}")

    pts = field.index.points
    mid = 0.5 * (pts[pairs[:, 0]] + pts[pairs[:, 1]])
    contrib = _square(density_at(field, mid))

    lo = np.minimum(pairs[:, 2], pairs[:, 3])
    hi = np.maximum(pairs[:, 2], pairs[:, 3])
    n = np.int64(f.size)
    key = lo.astype(np.int64) * n + hi
    uniq, inverse = np.unique(key, return_inverse=True)
    w = np.bincount(inverse, weights=contrib, minlength=uniq.size)

    for k, wk in zip(uniq.tolist(), w.tolist()):
        a, b = divmod(k, int(n))
        g = _peak_similarity(peaks[a], peaks[b])
        e = g * wk
        graph.edges[(a, b)] = Edge(w=wk, gamma=g, e=e)
        graph.strongest[a] = max(graph.strongest[a], e)
        graph.strongest[b] = max(graph.strongest[b], e)
    return graph


def _relative(e: float, strongest: float) -> float:
    # a vertex whose edges all weigh zero: each of them is its strongest
    return 1.0 if strongest == 0 else e / strongest


def prune_edges(graph: TopoGraph, config: PruneConfig | float) -> TopoGraph:
    """Cut every edge that is weak relative to the strongest edge at either end.

    The input graph is left untouched; pruned edges stay in the returned
    graph with ``kept=False``.
    """
    if not isinstance(config, PruneConfig):
        config = PruneConfig(float(config))
    alpha = float(config.alpha)
    edges = {}
    for (a, b), edge in graph.edges.items():
        weak = (
            _relative(edge.e, graph.strongest[a]) < alpha
            or _relative(edge.e, graph.strongest[b]) < alpha
        )
        edges[(a, b)] = replace(edge, kept=edge.kept and not weak)
    return TopoGraph(
        peaks=dict(graph.peaks),
        sizes=dict(graph.sizes),
        edges=edges,
        strongest=dict(graph.strongest),
        alpha=alpha,
    )


@dataclass(frozen=True, eq=False)
class Labeling:
    label: np.ndarray
    num_labels: int
    coverage: float

    @property
    def noise(self) -> np.ndarray:
        return self.label == NOISE


def _find(parent: dict[int, int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def assign_labels(result: GrowthResult, pruned: TopoGraph) -> Labeling:
    """Connected components of the kept edges; components numbered by smallest root id."""
    parent = {r: r for r in pruned.peaks}
    for a, b in pruned.kept_edges():
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    comp: dict[int, int] = {}
    for r in sorted(parent):
        head = _find(parent, r)
        if head not in comp:
            comp[head] = len(comp)
    root_label = {r: comp[_find(parent, r)] for r in parent}

    root = np.asarray(result.root)
    label = np.full(root.size, NOISE, dtype=np.int64)
    covered = root != NOISE
    if covered.any():
        lut_keys = np.array(sorted(root_label), dtype=np.int64)
        lut_vals = np.array([root_label[r] for r in lut_keys], dtype=np.int64)
        label[covered] = lut_vals[np.searchsorted(lut_keys, root[covered])]
    coverage = float(covered.sum()) / root.size if root.size else 0.0
    return Labeling(label=label, num_labels=len(comp), coverage=coverage)


def graph_to_dict(graph: TopoGraph) -> dict:
    return {
        "alpha": graph.alpha,
        "vertices": [
            {"root": int(r), "peak_density": float(graph.peaks[r]), "size": int(graph.sizes[r])}
            for r in graph.vertices
        ],
        "edges": [
            {
                "i": int(a),
                "j": int(b),
                "w": float(edge.w),
                "gamma": float(edge.gamma),
                "e": float(edge.e),
                "kept": bool(edge.kept),
            }
            for (a, b), edge in sorted(graph.edges.items())
        ],
    }


def graph_to_json(graph: TopoGraph, indent: int | None = 2) -> str:
    return json.dumps(graph_to_dict(graph), indent=indent)
