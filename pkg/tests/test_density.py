import numpy as np
import pytest
from hypothesis import given, strategies as st

from gdt.density import (
    DensityConfig,
    DensityField,
    default_bandwidth_floor,
    density_at,
    estimate_density,
    silverman_bandwidths,
)
from gdt.neighbors import KnnIndex
from oracles import global_kde, lkde_at

# (4 / 3000) ** 0.2 evaluated with 30-digit mpmath
H_UNIT_1000 = 0.266064999426197171030299660545


def _unit_std_column(n, scale, seed=0):
    x = np.random.default_rng(seed).normal(size=n)
    x = (x - x.mean()) / x.std(ddof=1)
    return scale * x


def test_silverman_closed_form():
    pts = np.column_stack([_unit_std_column(1000, 1.0), _unit_std_column(1000, 2.0, seed=1)])
    h = silverman_bandwidths(pts)
    assert h[0] == pytest.approx(H_UNIT_1000, rel=1e-12)
    assert h[1] == pytest.approx(2 * H_UNIT_1000, rel=1e-12)


def test_silverman_constant_dimension_is_floored():
    pts = np.column_stack([np.arange(10.0), np.full(10, 3.0)])
    h = silverman_bandwidths(pts, bandwidth_floor=1e-6)
    assert h[1] == 1e-6
    assert silverman_bandwidths(pts)[1] == default_bandwidth_floor(pts) == pytest.approx(9e-9)


def test_silverman_needs_two_samples():
    with pytest.raises(ValueError, match="need >=2 samples"):
        silverman_bandwidths([[1.0, 2.0]])


def test_single_repeated_point():
    pts = np.ones((5, 2))
    idx = KnnIndex(pts)
    field = estimate_density(pts, idx, DensityConfig(1, np.ones(2)))
    assert np.all(field.raw == 1.0)
    assert np.all(field.f == 1.0)


def test_minmax_normalization():
    pts = np.zeros((3, 1))
    raw = np.array([2.0, 4.0, 6.0])
    field = DensityField(raw, None, 2.0, 6.0, DensityConfig(1, [1.0]), KnnIndex(pts))
    np.testing.assert_allclose(field.normalize(raw), [0.0, 0.5, 1.0])


def test_full_neighborhood_equals_global_kde():
    pts = np.random.default_rng(7).normal(size=(120, 2))
    idx = KnnIndex(pts)
    cfg = DensityConfig.from_points(pts, k_d=len(pts))
    field = estimate_density(pts, idx, cfg)
    np.testing.assert_allclose(field.raw, global_kde(pts, cfg.bandwidths), rtol=1e-9)


def test_invariants():
    pts = np.random.default_rng(1).normal(size=(300, 3))
    field = estimate_density(pts, KnnIndex(pts), DensityConfig.from_points(pts, 12))
    assert field.f.min() == 0.0 and field.f.max() == 1.0
    assert np.all(field.raw > 0)
    np.testing.assert_array_equal(np.argsort(field.raw, kind="stable"), np.argsort(field.f, kind="stable"))


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_translation_invariance(dx, dy):
    pts = np.random.default_rng(2).normal(size=(60, 2))
    cfg = DensityConfig.from_points(pts, 8)
    a = estimate_density(pts, KnnIndex(pts), cfg)
    moved = pts + [dx, dy]
    b = estimate_density(moved, KnnIndex(moved), cfg)
    np.testing.assert_allclose(b.raw, a.raw, rtol=1e-6)


def test_density_at_sample_point_is_exact():
    pts = np.random.default_rng(4).normal(size=(200, 2))
    field = estimate_density(pts, KnnIndex(pts), DensityConfig.from_points(pts, 10))
    for i in (0, 17, 123):
        assert density_at(field, pts[i]) == field.f[i]
    np.testing.assert_array_equal(density_at(field, pts), field.f)


def test_density_at_far_away_clamps_to_zero():
    pts = np.random.default_rng(5).normal(size=(100, 2))
    field = estimate_density(pts, KnnIndex(pts), DensityConfig.from_points(pts, 10))
    assert density_at(field, [1e4, 1e4]) == 0.0


def test_midpoint_density_against_direct_evaluation():
    pts = np.random.default_rng(6).normal(size=(500, 2))
    idx = KnnIndex(pts)
    cfg = DensityConfig.from_points(pts, 15)
    field = estimate_density(pts, idx, cfg)
    nn, _ = idx.query_many(pts, 2)
    for i in range(0, 500, 25):
        j = nn[i, 1]
        mid = 0.5 * (pts[i] + pts[j])
        got = density_at(field, mid)
        direct = (lkde_at(pts, cfg.bandwidths, 15, mid) - field.p_min) / (field.p_max - field.p_min)
        assert got == pytest.approx(min(max(direct, 0.0), 1.0), rel=1e-9, abs=1e-12)
        lo, hi = sorted((field.f[i], field.f[j]))
        assert lo - 0.1 <= got <= hi + 0.1


def test_errors():
    pts = np.random.default_rng(0).normal(size=(10, 2))
    idx = KnnIndex(pts)
    with pytest.raises(ValueError, match="exceeds"):
        estimate_density(pts, idx, DensityConfig(11, [1.0, 1.0]))
    with pytest.raises(ValueError, match="positive"):
        DensityConfig(3, [1.0, 0.0])
    field = estimate_density(pts, idx, DensityConfig(3, [1.0, 1.0]))
    with pytest.raises(ValueError, match="dimension mismatch"):
        density_at(field, [0.0, 0.0, 0.0])
