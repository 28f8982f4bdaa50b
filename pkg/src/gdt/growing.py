"""Density growing: discrete gradient flows, local clusters, noise, boundary pairs.

Points are born in descending density order; ties in density are broken by
smaller point id, so "born before" is the strict total order
``(f desc, id asc)``. Every point links to the earlier-born neighbor with the
steepest ascent ``(f_p - f_i) / d(i, p)``; points with no earlier-born
neighbor are roots (local cluster centers).

The sweep is sequential in principle, but because the birth order is fixed
up front, each step depends only on its parent's state. The implementation
below therefore computes parents for all points at once and resolves roots
and noise inheritance by pointer doubling along the parent forest.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence

import numpy as np

from .density import DensityField
from .neighbors import KnnIndex

__all__ = [
    "NOISE",
    "GrowthConfig",
    "GrowthResult",
    "birth_order",
    "select_parent",
    "grow",
]

NOISE = -1


@dataclass(frozen=True)
class GrowthConfig:
    k_s: int
    epsilon: float = 0.0

    def __post_init__(self):
        if int(self.k_s) < 1:
            raise ValueError("k_s must be >= 1")
        if not 0.0 <= float(self.epsilon) <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")


@dataclass(eq=False)
class GrowthResult:
    parent: np.ndarray
    root: np.ndarray
    clusters: dict[int, list[int]]
    boundary_pairs: np.ndarray  # (m, 4) rows of (i, s, root_i, root_s)
    birth_order: np.ndarray
    neighbors: Optional[np.ndarray] = dc_field(default=None, repr=False)

    @property
    def noise(self) -> np.ndarray:
        return self.root == NOISE

    @property
    def roots(self) -> np.ndarray:
        return np.flatnonzero(self.parent == np.arange(self.parent.size))

    @property
    def n(self) -> int:
        return self.parent.size


def birth_order(f) -> np.ndarray:
    """Permutation of point ids by descending density, smaller id first on ties."""
    f = np.asarray(f, dtype=float)
    return np.lexsort((np.arange(f.size), -f))


def select_parent(
    i: int,
    neighbors: Sequence[int],
    dists: Sequence[float],
    f: Sequence[float],
    born: Callable[[int], bool],
) -> Optional[int]:
    """Steepest-ascent parent of ``i`` among its already-born neighbors.

    Returns ``None`` when no neighbor is born yet, i.e. ``i`` is a local
    maximum. Equal slopes go to the smaller id; a born neighbor at distance
    zero has infinite slope.
    """
    best, best_slope = None, -np.inf
    for j, d in zip(neighbors, dists):
        j = int(j)
        if j == i or not born(j):
            continue
        slope = np.inf if d == 0 else (f[j] - f[i]) / d
        if best is None or slope > best_slope or (slope == best_slope and j < best):
            best, best_slope = j, slope
    return best


def _jump_to_roots(parent: np.ndarray, flag: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Follow parent links to the root, OR-ing ``flag`` over the path."""
    anc = parent.copy()
    acc = flag.copy()
    while True:
        nxt = anc[anc]
        acc = acc | acc[anc]
        if np.array_equal(nxt, anc):
            return anc, acc
        anc = nxt


def _mutual_mask(nbr: np.ndarray, i_idx: np.ndarray, s_idx: np.ndarray) -> np.ndarray:
    """True where ``i_idx[t]`` is among the neighbors of ``s_idx[t]``."""
    n = np.int64(nbr.shape[0])
    keys = np.sort((np.arange(n, dtype=np.int64)[:, None] * n + nbr).ravel())
    probe = s_idx.astype(np.int64) * n + i_idx.astype(np.int64)
    pos = np.minimum(np.searchsorted(keys, probe), keys.size - 1)
    return keys[pos] == probe


def grow(points, field: DensityField, index: KnnIndex, config: GrowthConfig) -> GrowthResult:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    f = np.asarray(field.f, dtype=float)
    if f.shape != (n,) or index.n != n or pts.shape != index.points.shape:
        raise ValueError("points, density field and index have inconsistent sizes")
    if config.k_s > n:
        raise ValueError(f"k_s={config.k_s} exceeds sample count n={n}")

    order = birth_order(f)
    rank = np.empty(n, dtype=np.intp)
    rank[order] = np.arange(n)
    ids = np.arange(n)

    nbr, nd = index.query_many(pts, config.k_s)
    born = rank[nbr] < rank[:, None]

    with np.errstate(divide="ignore", invalid="ignore"):
        slope = np.where(nd > 0, (f[nbr] - f[:, None]) / nd, np.inf)
    slope = np.where(born, slope, -np.inf)
    best = np.lexsort((nbr, -slope), axis=1)[:, 0]
    has_parent = born.any(axis=1)
    parent = np.where(has_parent, nbr[ids, best], ids)

    anc, _ = _jump_to_roots(parent, np.zeros(n, dtype=bool))
    top = f[anc]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(top > 0, f / top, 1.0)
    fails = has_parent & (ratio < config.epsilon)
    _, noisy = _jump_to_roots(parent, fails)
    root = np.where(noisy, NOISE, anc)

    # boundary pairs, scanned from the later-born side only
    live = has_parent & ~noisy
    rows, cols = np.nonzero(born & live[:, None])
    s = nbr[rows, cols]
    keep = (root[s] != NOISE) & (root[s] != root[rows])
    rows, cols, s = rows[keep], cols[keep], s[keep]
    keep = _mutual_mask(nbr, rows, s)
    rows, cols, s = rows[keep], cols[keep], s[keep]
    # sweep order: by birth of i, then by neighbor rank within N_i
    seq = np.lexsort((cols, rank[rows]))
    rows, s = rows[seq], s[seq]
    pairs = np.column_stack([rows, s, root[rows], root[s]]).astype(np.intp)
    if pairs.size:
        key = np.minimum(rows, s).astype(np.int64) * n + np.maximum(rows, s)
        _, first = np.unique(key, return_index=True)
        pairs = pairs[np.sort(first)]
    else:
        pairs = pairs.reshape(0, 4)

    clusters: dict[int, list[int]] = {}
    members = np.flatnonzero(root != NOISE)
    if members.size:
        by_root = members[np.argsort(root[members], kind="stable")]
        uniq, starts = np.unique(root[by_root], return_index=True)
        for r, chunk in zip(uniq, np.split(by_root, starts[1:])):
            clusters[int(r)] = chunk.tolist()

    return GrowthResult(
        parent=parent,
        root=root,
        clusters=clusters,
        boundary_pairs=pairs,
        birth_order=order,
        neighbors=nbr,
    )
