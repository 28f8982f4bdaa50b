"""Density-topology clustering: local clusters grown along density gradients,
joined by a pruned connectivity graph."""

from .density import DensityConfig, DensityField, density_at, estimate_density, silverman_bandwidths
from .growing import NOISE, GrowthConfig, GrowthResult, grow, select_parent
from .neighbors import KnnIndex, build_index, query_knn
from .pipeline import GDTConfig, GDTResult, run_gdt
from .topology import (
    Labeling,
    PruneConfig,
    TopoGraph,
    alpha_from_beta,
    assign_labels,
    build_topograph,
    prune_edges,
)

__version__ = "0.1.0"
