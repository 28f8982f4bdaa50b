"""End-to-end clustering: index -> density -> growth -> graph -> labels."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .density import DensityConfig, DensityField, estimate_density
from .growing import GrowthConfig, GrowthResult, grow
from .neighbors import KnnIndex
from .topology import Labeling, PruneConfig, TopoGraph, assign_labels, build_topograph, prune_edges

__all__ = ["GDTConfig", "GDTResult", "run_gdt", "STAGES"]

STAGES = ("index", "density", "grow", "graph")


@dataclass(frozen=True)
class GDTConfig:
    """Hyper-parameters: density neighborhood, growth neighborhood, edge cut, noise cut."""

    k_d: int = 15
    k_s: int = 15
    alpha: float = 0.2
    epsilon: float = 0.0
    bandwidth_floor: float | None = None

    def __post_init__(self):
        GrowthConfig(self.k_s, self.epsilon)
        PruneConfig(self.alpha)
        if int(self.k_d) < 1:
            raise ValueError("k_d must be >= 1")


@dataclass(eq=False)
class GDTResult:
    index: KnnIndex
    field: DensityField
    growth: GrowthResult
    graph: TopoGraph
    pruned: TopoGraph
    labeling: Labeling
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def labels(self) -> np.ndarray:
        return self.labeling.label


def run_gdt(points, config: GDTConfig | None = None, **overrides) -> GDTResult:
    if config is None:
        config = GDTConfig(**overrides)
    elif overrides:
        raise TypeError("pass either a GDTConfig or keyword overrides, not both")
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if n < 2:
        raise ValueError("need >=2 samples to cluster")
    if config.k_d > n or config.k_s > n:
        raise ValueError(f"k_d={config.k_d} and k_s={config.k_s} must not exceed n={n}")

    timings = {}
    t0 = time.perf_counter()
    index = KnnIndex(pts)
    t1 = time.perf_counter()
    timings["index"] = t1 - t0

    dcfg = DensityConfig.from_points(pts, config.k_d, config.bandwidth_floor)
    field = estimate_density(pts, index, dcfg)
    t2 = time.perf_counter()
    timings["density"] = t2 - t1

    growth = grow(pts, field, index, GrowthConfig(config.k_s, config.epsilon))
    t3 = time.perf_counter()
    timings["grow"] = t3 - t2

    graph = build_topograph(growth, field)
    pruned = prune_edges(graph, PruneConfig(config.alpha))
    labeling = assign_labels(growth, pruned)
    timings["graph"] = time.perf_counter() - t3

    return GDTResult(index, field, growth, graph, pruned, labeling, timings)
