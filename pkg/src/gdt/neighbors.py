"""Exact Euclidean k-nearest-neighbor index.

Candidate neighbors come from scipy's cKDTree; distances are then recomputed
with one fixed arithmetic expression and re-ranked by ``(distance, id)`` so
the results are exact, deterministic and independent of how the tree breaks
ties internally.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

__all__ = ["KnnIndex", "build_index", "query_knn", "euclidean"]


def euclidean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance along the last axis (broadcasting)."""
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return np.sqrt(np.sum(diff * diff, axis=-1))


def _check_finite(points: np.ndarray, what: str = "points") -> None:
    bad = ~np.isfinite(points)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise ValueError(f"non-finite coordinate in {what} at row {row}, column {col}")


class KnnIndex:
    """Immutable exact kNN index over the rows of ``points``.

    Point ids are row indices. A query point that coincides with an indexed
    point gets that point back at distance 0, and it counts toward ``k``.
    """

    def __init__(self, points):
        pts = np.array(points, dtype=float, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("empty sample set")
        if pts.shape[1] == 0:
            raise ValueError("points must have at least one dimension")
        _check_finite(pts)
        pts.setflags(write=False)
        self.points = pts
        self.tree = cKDTree(pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def _as_queries(self, queries) -> np.ndarray:
        q = np.asarray(queries, dtype=float)
        if q.ndim == 1:
            q = q[None, :]
        if q.ndim != 2 or q.shape[1] != self.dim:
            raise ValueError(
                f"dimension mismatch: index has d={self.dim}, query has shape {np.shape(queries)}"
            )
        _check_finite(q, "query")
        return q

    def query_many(self, queries, k: int) -> tuple[np.ndarray, np.ndarray]:
        """k nearest neighbors for every row of ``queries``.

        Returns ``(ids, dists)``, both of shape ``(m, min(k, n))``, each row
        sorted by ``(distance, id)``.
        """
        k = int(k)
        if k < 1:
            raise ValueError("k must be >= 1")
        q = self._as_queries(queries)
        m, n = q.shape[0], self.n
        k = min(k, n)
        if m == 0:
            return np.empty((0, k), dtype=np.intp), np.empty((0, k))

        # over-fetch so boundary ties can be settled without a second query
        kk = min(n, k + max(4, k // 2))
        tree_d, cand = self.tree.query(q, k=kk)
        tree_d = np.asarray(tree_d, dtype=float).reshape(m, kk)
        cand = np.asarray(cand, dtype=np.intp).reshape(m, kk)

        exact = euclidean(self.points[cand], q[:, None, :])
        order = np.lexsort((cand, exact), axis=-1)
        cand = np.take_along_axis(cand, order, axis=1)
        exact = np.take_along_axis(exact, order, axis=1)
        ids = cand[:, :k].copy()
        dists = exact[:, :k].copy()

        if kk < n:
            # unseen points are at least tree_d[:, -1] away (up to rounding)
            unsafe = np.flatnonzero(dists[:, -1] >= tree_d[:, -1] * (1.0 - 1e-12))
            if unsafe.size:
                radii = dists[unsafe, -1] * (1.0 + 1e-9) + 1e-300
                balls = self.tree.query_ball_point(q[unsafe], radii)
                for row, ball in zip(unsafe, balls):
                    ball = np.asarray(ball, dtype=np.intp)
                    bd = euclidean(self.points[ball], q[row])
                    o = np.lexsort((ball, bd))[:k]
                    ids[row] = ball[o]
                    dists[row] = bd[o]
        return ids, dists

    def query(self, q, k: int) -> tuple[np.ndarray, np.ndarray]:
        q = np.asarray(q, dtype=float)
        if q.ndim != 1:
            raise ValueError("query must be a single d-vector; use query_many for batches")
        ids, dists = self.query_many(q[None, :], k)
        return ids[0], dists[0]


def build_index(points) -> KnnIndex:
    return KnnIndex(points)


def query_knn(index: KnnIndex, q, k: int) -> list[tuple[int, float]]:
    """Ordered ``(point id, distance)`` pairs for the ``k`` nearest points."""
    ids, dists = index.query(q, k)
    return [(int(i), float(d)) for i, d in zip(ids, dists)]
