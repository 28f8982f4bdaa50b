"""Datasets: toy generators, CSV loading with mean imputation, image <-> samples."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .growing import NOISE

__all__ = [
    "SampleSet",
    "ImageFrame",
    "gen_circles",
    "gen_moons",
    "gen_blobs",
    "gen_smile",
    "load_csv",
    "read_png",
    "write_png",
    "image_to_samples",
    "labels_to_image",
    "palette_color",
    "label_from_color",
    "NOISE_COLOR",
]


@dataclass(frozen=True, eq=False)
class SampleSet:
    points: np.ndarray
    truth: Optional[np.ndarray] = None
    names: Optional[list[str]] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must be an n x d matrix")
        object.__setattr__(self, "points", pts)
        if self.truth is not None:
            truth = np.asarray(self.truth)
            if truth.shape != (pts.shape[0],):
                raise ValueError("truth length does not match number of points")
            object.__setattr__(self, "truth", truth)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def standardized(self) -> "SampleSet":
        """Copy with every column z-scored; constant columns are only centered."""
        mu = self.points.mean(axis=0)
        sd = self.points.std(axis=0)
        sd[sd == 0] = 1.0
        return SampleSet((self.points - mu) / sd, self.truth, self.names)


# -- toy generators ---------------------------------------------------------
#
# Curve positions are evenly spaced by default (the usual make_circles /
# make_moons construction); spacing="random" draws them uniformly instead.
# The Gaussian jitter always comes from the seeded generator, drawn after the
# positions, so sigma=0 and sigma>0 runs share the same underlying layout.

def _check_n(n: int) -> None:
    if n < 4:
        raise ValueError("need n >= 4 points")


def _positions(rng, lo: float, hi: float, m: int, spacing: str, endpoint: bool) -> np.ndarray:
    if spacing == "even":
        return np.linspace(lo, hi, m, endpoint=endpoint)
    if spacing == "random":
        return rng.uniform(lo, hi, m)
    raise ValueError(f"unknown spacing {spacing!r}; expected 'even' or 'random'")


def gen_circles(
    n: int, sigma: float = 0.1, seed: int = 0, radii=(1.0, 0.5), spacing: str = "even"
) -> SampleSet:
    """Two concentric circles, half the points each; truth is the circle index."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    sizes = (n - n // 2, n // 2)
    theta = np.concatenate(
        [_positions(rng, 0.0, 2 * np.pi, m, spacing, endpoint=False) for m in sizes]
    )
    truth = np.repeat([0, 1], sizes)
    r = np.asarray(radii, dtype=float)[truth]
    pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    pts += rng.normal(0.0, sigma, pts.shape)
    return SampleSet(pts, truth)


def gen_moons(n: int, sigma: float = 0.15, seed: int = 0, spacing: str = "even") -> SampleSet:
    """Two interleaved unit half circles: one opening down at (0, 0), one opening up at (1, 0.5)."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    sizes = (n - n // 2, n // 2)
    theta = np.concatenate([_positions(rng, 0.0, np.pi, m, spacing, endpoint=True) for m in sizes])
    truth = np.repeat([0, 1], sizes)
    upper = truth == 0
    x = np.where(upper, np.cos(theta), 1.0 - np.cos(theta))
    y = np.where(upper, np.sin(theta), 0.5 - np.sin(theta))
    pts = np.column_stack([x, y])
    pts += rng.normal(0.0, sigma, pts.shape)
    return SampleSet(pts, truth)


def gen_blobs(n: int, centers=None, sigma: float = 0.5, seed: int = 0) -> SampleSet:
    """Isotropic Gaussian blobs, points dealt round-robin to the centers."""
    if n < 1:
        raise ValueError("need n >= 1 points")
    rng = np.random.default_rng(seed)
    if centers is None:
        centers = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0)]
    centers = np.asarray(centers, dtype=float)
    truth = np.arange(n) % len(centers)
    pts = centers[truth] + rng.normal(0.0, sigma, (n, centers.shape[1]))
    return SampleSet(pts, truth)


def gen_smile(n: int = 1000, sigma: float = 0.02, seed: int = 0, spacing: str = "even") -> SampleSet:
    """Face ring, mouth arc and two eye blobs (classes 0..3)."""
    if n < 8:
        raise ValueError("need n >= 8 points")
    rng = np.random.default_rng(seed)
    n_ring, n_mouth = int(0.4 * n), int(0.3 * n)
    n_eye = (n - n_ring - n_mouth) // 2
    n_eye2 = n - n_ring - n_mouth - n_eye

    t = _positions(rng, 0.0, 2 * np.pi, n_ring, spacing, endpoint=False)
    ring = np.column_stack([np.cos(t), np.sin(t)])
    t = _positions(rng, np.radians(200), np.radians(340), n_mouth, spacing, endpoint=True)
    mouth = np.column_stack([0.55 * np.cos(t), 0.05 + 0.55 * np.sin(t)])
    ring += rng.normal(0.0, sigma, ring.shape)
    mouth += rng.normal(0.0, sigma, mouth.shape)
    eyes = [
        np.array([-0.35, 0.4]) + rng.normal(0.0, 0.05, (n_eye, 2)),
        np.array([0.35, 0.4]) + rng.normal(0.0, 0.05, (n_eye2, 2)),
    ]
    pts = np.vstack([ring, mouth, *eyes])
    truth = np.repeat([0, 1, 2, 3], [n_ring, n_mouth, n_eye, n_eye2])
    return SampleSet(pts, truth)


# -- CSV --------------------------------------------------------------------

def _resolve_column(label_column, header: Optional[list[str]], width: int) -> Optional[int]:
    if label_column is None:
        return None
    if header is not None and label_column in header:
        return header.index(label_column)
    try:
        idx = int(label_column)
    except (TypeError, ValueError):
        raise ValueError(f"label column {label_column!r} not found") from None
    if idx < 0:
        idx += width
    if not 0 <= idx < width:
        raise ValueError(f"label column index {label_column} out of range for {width} columns")
    return idx


def load_csv(path, has_header: bool = True, label_column=None) -> SampleSet:
    """Read a comma-separated numeric table; empty cells get the column mean."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    header = None
    if has_header:
        if not rows:
            raise ValueError(f"{path}: no header row")
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(header) if header is not None else len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: row {r} has {len(row)} fields, expected {width}")

    lab = _resolve_column(label_column, header, width)
    feat_cols = [c for c in range(width) if c != lab]
    if not feat_cols:
        raise ValueError(f"{path}: no feature columns")
    values = np.full((len(rows), len(feat_cols)), np.nan)
    for r, row in enumerate(rows):
        for j, c in enumerate(feat_cols):
            cell = row[c].strip()
            if cell == "":
                continue
            try:
                values[r, j] = float(cell)
            except ValueError:
                raise ValueError(f"{path}: non-numeric value {cell!r} at row {r}, column {c}") from None
    present = ~np.isnan(values)
    for j in np.flatnonzero(~present.all(axis=0)):
        if not present[:, j].any():
            raise ValueError(f"{path}: column {feat_cols[j]} has no values")
        values[~present[:, j], j] = values[present[:, j], j].mean()

    truth = None
    if lab is not None:
        truth = np.array([row[lab].strip() for row in rows])
    names = [header[c] for c in feat_cols] if header is not None else None
    return SampleSet(values, truth, names)


# -- images -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ImageFrame:
    pixels: np.ndarray  # (height, width, 3), values in [0, 255]

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=float)
        if px.ndim != 3 or px.shape[2] != 3 or px.shape[0] * px.shape[1] < 1:
            raise ValueError("image must be a non-empty height x width x 3 array")
        if px.min() < 0 or px.max() > 255:
            raise ValueError("channel values must lie in [0, 255]")
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def read_png(path, max_pixels: Optional[int] = None) -> ImageFrame:
    from PIL import Image

    with Image.open(path) as im:
        if max_pixels is not None and im.width * im.height > max_pixels:
            raise ValueError(
                f"{path}: image has {im.width * im.height} pixels, limit is {max_pixels}"
            )
        return ImageFrame(np.asarray(im.convert("RGB"), dtype=float))


def write_png(img: ImageFrame, path) -> None:
    from PIL import Image

    Image.fromarray(np.clip(np.rint(img.pixels), 0, 255).astype(np.uint8), "RGB").save(path)


def image_to_samples(img: ImageFrame) -> SampleSet:
    """One (r, g, b, x, y) row per pixel in raster order; x is the column, y the row."""
    h, w = img.height, img.width
    yy, xx = np.mgrid[0:h, 0:w]
    pts = np.column_stack([img.pixels.reshape(-1, 3), xx.ravel(), yy.ravel()])
    return SampleSet(pts, names=["r", "g", "b", "x", "y"])


# Labels map to 24-bit colors through an affine bijection mod 2**24, with
# the noise slot landing on light gray.
_MULT = 0x9E3779
_MULT_INV = pow(_MULT, -1, 1 << 24)
NOISE_COLOR = (211, 211, 211)
_OFFSET = (NOISE_COLOR[0] << 16) | (NOISE_COLOR[1] << 8) | NOISE_COLOR[2]


def palette_color(label: int) -> tuple[int, int, int]:
    code = ((int(label) - NOISE) * _MULT + _OFFSET) % (1 << 24)
    return (code >> 16) & 255, (code >> 8) & 255, code & 255


def label_from_color(rgb: Sequence[int]) -> int:
    code = (int(rgb[0]) << 16) | (int(rgb[1]) << 8) | int(rgb[2])
    return ((code - _OFFSET) * _MULT_INV) % (1 << 24) + NOISE


def labels_to_image(labels, width: int, height: int) -> ImageFrame:
    labels = np.asarray(getattr(labels, "label", labels), dtype=np.int64)
    if labels.size != width * height:
        raise ValueError(f"{labels.size} labels for a {width}x{height} image")
    uniq, inv = np.unique(labels, return_inverse=True)
    colors = np.array([palette_color(u) for u in uniq], dtype=float)
    return ImageFrame(colors[inv.ravel()].reshape(height, width, 3))
