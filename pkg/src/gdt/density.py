"""Local kernel density estimation with max-min normalization.

Each point's density is a product-Gaussian kernel sum over its ``k_d``
nearest samples (itself included), with one Silverman bandwidth per
dimension. Densities are then rescaled to [0, 1].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .neighbors import KnnIndex

__all__ = [
    "DensityConfig",
    "DensityField",
    "default_bandwidth_floor",
    "silverman_bandwidths",
    "estimate_density",
    "density_at",
]

_CHUNK = 1 << 15


def default_bandwidth_floor(points) -> float:
    pts = np.asarray(points, dtype=float)
    span = float(np.max(np.ptp(pts, axis=0))) if pts.size else 0.0
    return 1e-9 * (span if span > 0 else 1.0)


def silverman_bandwidths(points, bandwidth_floor: float | None = None) -> np.ndarray:
    """Per-dimension rule-of-thumb bandwidths ``(4 s^5 / (3 n)) ** 0.2``.

    ``s`` is the sample standard deviation (n - 1 divisor). Dimensions whose
    bandwidth falls below ``bandwidth_floor`` are clamped to it.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if n < 2:
        raise ValueError("need >=2 samples for bandwidth")
    if bandwidth_floor is None:
        bandwidth_floor = default_bandwidth_floor(pts)
    sigma = pts.std(axis=0, ddof=1)
    h = (4.0 * sigma**5 / (3.0 * n)) ** 0.2
    return np.maximum(h, bandwidth_floor)


@dataclass(frozen=True)
class DensityConfig:
    k_d: int
    bandwidths: np.ndarray
    bandwidth_floor: float = 1e-9

    def __post_init__(self):
        h = np.atleast_1d(np.asarray(self.bandwidths, dtype=float))
        object.__setattr__(self, "bandwidths", h)
        if int(self.k_d) < 1:
            raise ValueError("k_d must be >= 1")
        if not self.bandwidth_floor > 0:
            raise ValueError("bandwidth_floor must be positive")
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            raise ValueError("bandwidths must be positive")
        if np.any(h < self.bandwidth_floor):
            raise ValueError("bandwidths must be >= bandwidth_floor")

    @classmethod
    def from_points(cls, points, k_d: int, bandwidth_floor: float | None = None) -> "DensityConfig":
        if bandwidth_floor is None:
            bandwidth_floor = default_bandwidth_floor(points)
        return cls(int(k_d), silverman_bandwidths(points, bandwidth_floor), bandwidth_floor)


@dataclass(frozen=True, eq=False)
class DensityField:
    raw: np.ndarray
    f: np.ndarray
    p_min: float
    p_max: float
    config: DensityConfig
    index: KnnIndex

    def normalize(self, raw) -> np.ndarray:
        raw = np.asarray(raw, dtype=float)
        if self.p_max == self.p_min:
            return np.ones_like(raw)
        return (raw - self.p_min) / (self.p_max - self.p_min)

    def __call__(self, q) -> np.ndarray:
        return density_at(self, q)


def _raw_density(index: KnnIndex, queries: np.ndarray, config: DensityConfig) -> np.ndarray:
    pts = index.points
    inv = 1.0 / (2.0 * config.bandwidths**2)
    out = np.empty(queries.shape[0])
    for start in range(0, queries.shape[0], _CHUNK):
        q = queries[start:start + _CHUNK]
        ids, _ = index.query_many(q, config.k_d)
        diff = pts[ids] - q[:, None, :]
        out[start:start + _CHUNK] = np.exp(-(diff * diff) @ inv).sum(axis=1)
    return out


def estimate_density(points, index: KnnIndex, config: DensityConfig) -> DensityField:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape != index.points.shape:
        raise ValueError("points and index disagree in shape")
    n, d = pts.shape
    if config.k_d > n:
        raise ValueError(f"k_d={config.k_d} exceeds sample count n={n}")
    if config.bandwidths.shape != (d,):
        raise ValueError(f"expected {d} bandwidths, got {config.bandwidths.shape[0]}")

    raw = _raw_density(index, pts, config)
    p_min, p_max = float(raw.min()), float(raw.max())
    field = DensityField(raw, np.empty(0), p_min, p_max, config, index)
    f = field.normalize(raw)
    object.__setattr__(field, "f", f)
    raw.setflags(write=False)
    f.setflags(write=False)
    return field


def density_at(field: DensityField, q) -> np.ndarray | float:
    """Normalized density at arbitrary query points, clamped to [0, 1].

    Uses the query's own ``k_d`` nearest samples and the stored sample
    normalization constants. Accepts a single d-vector or an (m, d) batch.
    """
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    queries = q[None, :] if single else q
    if queries.ndim != 2 or queries.shape[1] != field.index.dim:
        raise ValueError(
            f"dimension mismatch: field has d={field.index.dim}, query has shape {q.shape}"
        )
    vals = np.clip(field.normalize(_raw_density(field.index, queries, field.config)), 0.0, 1.0)
    return float(vals[0]) if single else vals
