"""Smoke tests for the compiled extension module."""

import json
import math
import os

import pytest

rmt = pytest.importorskip("_rmtseries")


def test_normalize_and_correlation():
    y = rmt.normalize_subsequence([1.0, 2.0, 3.0])
    assert abs(sum(y)) < 1e-12
    assert rmt.correlation(y, y) == pytest.approx(1.0)
    y2 = rmt.normalize_subsequence([1.0, 3.0, 2.0])
    assert rmt.correlation(y, y2) == pytest.approx(0.5)


def test_build_matrix_shape_and_symmetry():
    import numpy as np

    scores = rmt.sample_common_mode_series(200, 0.3, seed=5)
    mats = rmt.build_ensemble(scores, 20)
    assert len(mats) == (200 - 39) // 20 + 1
    m = np.asarray(mats[0])
    assert m.shape == (20, 20)
    assert np.allclose(m, m.T)
    assert np.allclose(np.diag(m), 1.0)


def test_eigenvalues_and_band_removal():
    import numpy as np

    m = np.eye(4)
    assert rmt.eigenvalues(m) == pytest.approx([1.0, 1.0, 1.0, 1.0])
    full = np.ones((3, 3))
    r = np.asarray(rmt.remove_extreme_bands(full, 1))
    assert r[0, 2] == 0.0 and r[2, 0] == 0.0 and r[1, 1] == 1.0


def test_density_and_bounds():
    lo, hi = rmt.support_bounds(2.75, 3.535)
    assert lo == pytest.approx(0.339601, abs=1e-5)
    assert hi == pytest.approx(1.78204, abs=1e-5)
    assert rmt.mp_density(lo - 0.1, 2.75, 3.535) == 0.0
    assert rmt.mp_cdf(hi, 2.75, 3.535) == pytest.approx(1.0)


def test_fit_round_trip():
    eigs = rmt.sample_wishart_spectrum(90, 2.0, seed=3)
    a, b = rmt.fit_mp_params(eigs)
    assert b > 0.0


def test_unfold_and_statistics():
    levels = rmt.sample_poisson_levels(5000, seed=11)
    s = rmt.spacings(levels)
    assert sum(s) / len(s) == pytest.approx(1.0)
    d, p = rmt.ks_test(s, "poisson")
    assert p > 0.001
    assert rmt.sigma2_gue(1.0) == pytest.approx(0.34603, abs=1e-3)
    assert rmt.delta_poisson(3.0) == pytest.approx(0.2)


def test_gue_spacings_vs_surmise():
    pooled = []
    for i in range(20):
        levels = rmt.sample_gue_unfolded(100, seed=21, index=i)
        pooled.extend(rmt.spacings(levels))
    d, p = rmt.ks_test(pooled, "wigner")
    assert p > 0.01


def test_pipeline_runs_on_fixture(tmp_path):
    fixture = os.environ.get("RMTS_FIXTURE")
    if not fixture or not os.path.exists(fixture):
        pytest.skip("fixture not available")
    config = {
        "inputs": [fixture],
        "n_dim": 30,
        "k_bands": 5,
        "seed": 1,
        "out_dir": str(tmp_path / "out"),
    }
    summary = json.loads(rmt.run_pipeline(json.dumps(config)))
    assert "mp" in summary and "ks" in summary
    assert math.isfinite(summary["mp"]["0"]["a"])
