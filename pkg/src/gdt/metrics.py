"""External clustering scores computed over covered (non-noise) points.

Noise points are excluded from accuracy, F-score and ARI; they only show up
through :func:`coverage`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .growing import NOISE

__all__ = ["Contingency", "contingency", "accuracy", "fscore", "ari", "coverage", "score_all"]


def _labels_of(pred) -> np.ndarray:
    return np.asarray(getattr(pred, "label", pred))


@dataclass(frozen=True)
class Contingency:
    matrix: np.ndarray  # predicted clusters x true classes
    rows: np.ndarray
    cols: np.ndarray
    n_covered: int


def contingency(pred, truth) -> Contingency:
    pred = _labels_of(pred)
    truth = np.asarray(truth)
    if pred.shape[0] != truth.shape[0]:
        raise ValueError(f"length mismatch: {pred.shape[0]} predictions vs {truth.shape[0]} labels")
    keep = pred != NOISE
    if not keep.any():
        raise ValueError("empty evaluation set")
    _, pi = np.unique(pred[keep], return_inverse=True)
    _, ti = np.unique(truth[keep], return_inverse=True)
    m = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
    np.add.at(m, (pi, ti), 1)
    return Contingency(m, m.sum(axis=1), m.sum(axis=0), int(keep.sum()))


def accuracy(pred, truth) -> float:
    """Best one-to-one cluster/class matching, as a fraction of covered points."""
    c = contingency(pred, truth)
    r, k = linear_sum_assignment(c.matrix, maximize=True)
    return float(c.matrix[r, k].sum()) / c.n_covered


def fscore(pred, truth) -> float:
    """Class-size weighted best-match F1 (Larsen's cluster F-measure)."""
    c = contingency(pred, truth)
    m = c.matrix.astype(float)
    precision = m / c.rows[:, None]
    recall = m / c.cols[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        f1 = np.where(m > 0, 2 * precision * recall / (precision + recall), 0.0)
    return float(np.sum(c.cols / c.n_covered * f1.max(axis=0)))


def _pairs(x):
    x = np.asarray(x, dtype=float)
    return x * (x - 1) / 2


def ari(pred, truth) -> float:
    c = contingency(pred, truth)
    index = _pairs(c.matrix).sum()
    sum_a, sum_b = _pairs(c.rows).sum(), _pairs(c.cols).sum()
    total = _pairs(c.n_covered)
    expected = sum_a * sum_b / total if total > 0 else 0.0
    top = 0.5 * (sum_a + sum_b)
    if top == expected:
        same = c.matrix.shape[0] == c.matrix.shape[1] and np.count_nonzero(c.matrix) == c.matrix.shape[0]
        return 1.0 if same else 0.0
    return float((index - expected) / (top - expected))


def coverage(pred) -> float:
    labels = _labels_of(pred)
    if labels.size == 0:
        raise ValueError("empty labeling")
    return float(np.count_nonzero(labels != NOISE)) / labels.size


def score_all(pred, truth) -> dict[str, float]:
    return {
        "acc": accuracy(pred, truth),
        "fscore": fscore(pred, truth),
        "ari": ari(pred, truth),
        "coverage": coverage(pred),
    }
