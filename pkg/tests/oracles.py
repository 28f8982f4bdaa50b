"""Slow, independent reference implementations used as test oracles.

Nothing here touches the kd-tree or the vectorized code paths.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

NOISE = -1


def brute_knn(points, q, k):
    """All-pairs scan, ordered by (distance, id)."""
    points = np.asarray(points, dtype=float)
    d = np.sqrt(((points - np.asarray(q, dtype=float)) ** 2).sum(axis=1))
    order = sorted(range(len(points)), key=lambda j: (d[j], j))[:k]
    return np.array(order), d[order]


def global_kde(points, bandwidths):
    """Product-Gaussian kernel sum over every sample, evaluated at every sample."""
    points = np.asarray(points, dtype=float)
    out = np.empty(len(points))
    for i, x in enumerate(points):
        total = 0.0
        for y in points:
            prod = 1.0
            for l in range(points.shape[1]):
                prod *= math.exp(-((x[l] - y[l]) ** 2) / (2 * bandwidths[l] ** 2))
            total += prod
        out[i] = total
    return out


def lkde_at(points, bandwidths, k, q):
    ids, _ = brute_knn(points, q, k)
    total = 0.0
    for j in ids:
        total += math.prod(
            math.exp(-((q[l] - points[j][l]) ** 2) / (2 * bandwidths[l] ** 2))
            for l in range(len(q))
        )
    return total


def naive_grow(points, f, k_s, epsilon):
    """Sequential density-growing sweep with brute-force neighborhoods.

    Returns (parent, root, boundary_pairs) where boundary pairs are
    (i, s, root_i, root_s) tuples in discovery order.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    nbrs = []
    dists = []
    for i in range(n):
        ids, d = brute_knn(points, points[i], k_s)
        nbrs.append([int(j) for j in ids])
        dists.append(list(d))
    order = sorted(range(n), key=lambda i: (-f[i], i))
    born = set()
    parent = list(range(n))
    root = [None] * n
    pairs = []
    seen = set()
    for i in order:
        best, best_slope = None, None
        for j, d in zip(nbrs[i], dists[i]):
            if j not in born:
                continue
            slope = math.inf if d == 0 else (f[j] - f[i]) / d
            if best is None or slope > best_slope or (slope == best_slope and j < best):
                best, best_slope = j, slope
        if best is None:
            root[i] = i
        else:
            parent[i] = best
            r = root[best]
            if r == NOISE:
                root[i] = NOISE
            else:
                ratio = f[i] / f[r] if f[r] > 0 else 1.0
                if ratio < epsilon:
                    root[i] = NOISE
                else:
                    root[i] = r
                    for s in nbrs[i]:
                        if s in born and root[s] != NOISE and root[s] != r and i in nbrs[s]:
                            key = (min(i, s), max(i, s))
                            if key not in seen:
                                seen.add(key)
                                pairs.append((i, s, r, root[s]))
        born.add(i)
    return np.array(parent), np.array(root), pairs


def pair_counting_ari(a, b):
    """Adjusted Rand index straight from the definition over all point pairs."""
    n = len(a)
    both = same_a = same_b = 0
    for i, j in itertools.combinations(range(n), 2):
        sa, sb = a[i] == a[j], b[i] == b[j]
        both += sa and sb
        same_a += sa
        same_b += sb
    total = n * (n - 1) / 2
    expected = same_a * same_b / total
    top = (same_a + same_b) / 2
    return (both - expected) / (top - expected)


def enumerate_accuracy(matrix):
    """Best one-to-one matching of rows to columns by exhaustive search."""
    m = np.asarray(matrix)
    r, c = m.shape
    best = 0
    if r <= c:
        for cols in itertools.permutations(range(c), r):
            best = max(best, sum(m[i, cols[i]] for i in range(r)))
    else:
        for rows in itertools.permutations(range(r), c):
            best = max(best, sum(m[rows[j], j] for j in range(c)))
    return best / m.sum()


def brute_knn_all(points, queries, k):
    """Vectorized all-pairs scan for many queries, ordered by (distance, id)."""
    points = np.asarray(points, dtype=float)
    queries = np.asarray(queries, dtype=float)
    d = np.sqrt(((queries[:, None, :] - points[None, :, :]) ** 2).sum(axis=2))
    ids = np.broadcast_to(np.arange(len(points)), d.shape)
    order = np.lexsort((ids, d), axis=1)[:, :k]
    return order, np.take_along_axis(d, order, axis=1)
