"""Per-cluster fits, denormalization, and the quality measure."""

import numpy as np
import pytest

from modalfit.candidates import CandidateConfig
from modalfit.clustering import cluster_points
from modalfit.data_model import (
    DataTable,
    SyntheticSpec,
    generate_synthetic,
    normalize,
)
from modalfit.piecewise import (
    PiecewiseResult,
    evaluate_piecewise,
    fit_all_clusters,
    fit_cluster,
)

from conftest import identity_table


def cfg(s=2, lam=0.0):
    return CandidateConfig(subset_size=s, lam=lam)


class TestFitCluster:
    def test_exact_line_recovery(self):
        x = np.linspace(0.1, 0.9, 12)
        table = identity_table(np.column_stack([x, 0.5 * x + 0.25]))
        fit = fit_cluster(table, range(12), cfg(), bins=48)
        assert fit.slopes_defined
        bin_width = np.pi / 48
        assert abs(np.arctan(fit.plane_normalized.slopes[0]) - np.arctan(0.5)) < bin_width
        assert np.abs(fit.residuals).max() < np.tan(bin_width)

    def test_two_point_cluster_interpolates(self):
        table = identity_table([[0.0, 0.1], [1.0, 0.9], [0.5, 0.2], [0.6, 0.8]])
        fit = fit_cluster(table, [0, 1], cfg(), bins=12)
        assert fit.slopes_defined
        assert fit.plane_normalized.slopes[0] == pytest.approx(0.8)
        assert fit.plane_normalized.intercept == pytest.approx(0.1)
        assert np.abs(fit.residuals).max() < 1e-12

    def test_undersized_cluster_is_classification_only(self):
        table = identity_table(
            [[0.0, 0.0, 0.3], [0.5, 0.5, 0.9], [1.0, 0.2, 0.4], [0.3, 0.8, 0.6]]
        )
        fit = fit_cluster(table, [0, 1], cfg(s=3), bins=12)  # 2 < k+1 = 3
        assert not fit.slopes_defined
        assert np.all(fit.plane_normalized.slopes == 0.0)
        assert fit.plane_normalized.intercept == pytest.approx(
            np.median([0.3, 0.9])
        )

    def test_singleton_cluster(self):
        table = identity_table([[0.0, 0.3], [0.5, 0.9], [1.0, 0.4]])
        fit = fit_cluster(table, [1], cfg(), bins=12)
        assert not fit.slopes_defined
        assert fit.plane_normalized.intercept == pytest.approx(0.9)
        assert fit.residuals[0] == pytest.approx(0.0)

    def test_denormalization_consistency(self, rng):
        values = rng.uniform(-30, 70, size=(14, 3))
        norm = normalize(DataTable(("a", "b", "y"), values))
        fit = fit_cluster(norm, range(14), cfg(s=3), bins=24)
        pred_raw = fit.plane.predict(values[:, :-1])
        pred_norm = fit.plane_normalized.predict(norm.x)
        lifted = pred_norm * norm.params.spans[-1] + norm.params.offsets[-1]
        assert np.allclose(pred_raw, lifted, atol=1e-9)

    def test_median_back_substitution_intercept(self):
        x = np.linspace(0, 1, 9)
        y = x.copy()
        y[4] += 0.3  # one outlier; median back-substitution shrugs it off
        table = identity_table(np.column_stack([x, y]))
        fit = fit_cluster(table, range(9), cfg(), bins=48)
        assert fit.plane_normalized.intercept == pytest.approx(0.0, abs=1e-9)
        assert fit.plane_normalized.slopes[0] == pytest.approx(1.0, abs=1e-9)

    def test_empty_cluster_rejected(self):
        table = identity_table([[0.0, 0.0], [1.0, 1.0], [0.5, 0.6]])
        with pytest.raises(ValueError):
            fit_cluster(table, [], cfg(), bins=12)


class TestEvaluatePiecewise:
    def test_perfect_piecewise_zero_quality(self):
        x1 = np.linspace(0.0, 0.45, 10)
        x2 = np.linspace(0.55, 1.0, 10)
        table = identity_table(
            np.column_stack(
                [np.concatenate([x1, x2]), np.concatenate([0.3 * x1, -0.3 * x2 + 1.0])]
            )
        )
        from modalfit.candidates import generate_candidates
        from modalfit.mode_affinity import accumulate_affinity, detect_point_modes

        cands = generate_candidates(table, cfg())
        modes = detect_point_modes(cands, 1, 16, 20)
        clustering = cluster_points(accumulate_affinity(modes, cands, 20))
        fits = fit_all_clusters(table, clustering, cfg(), bins=16)
        result = evaluate_piecewise(table, clustering, fits)
        assert result.quality == pytest.approx(0.0, abs=1e-9)

    def test_constant_fit_quality_one(self):
        # classification-only cluster over y = {0, 1}: |0-0.5| + |1-0.5| = 1
        table = identity_table([[0.2, 0.1, 0.0], [0.8, 0.9, 1.0], [0.5, 0.5, 0.5]])
        fit = fit_cluster(table, [0, 1], cfg(s=3), bins=12)
        assert fit.residuals.sum() == pytest.approx(1.0)

    def test_quality_invariant_under_membership_order(self, rng):
        values = rng.uniform(0, 1, size=(12, 2))
        table = identity_table(values)
        f1 = fit_cluster(table, [3, 1, 7, 5], cfg(), bins=12)
        f2 = fit_cluster(table, [7, 3, 5, 1], cfg(), bins=12)
        assert f1.residuals.sum() == pytest.approx(f2.residuals.sum(), abs=1e-12)
        assert f1.plane_normalized.slopes[0] == pytest.approx(
            f2.plane_normalized.slopes[0], abs=1e-12
        )

    def test_fit_count_must_match(self, rng):
        table = identity_table(rng.uniform(0, 1, size=(6, 2)))
        a = np.ones((6, 6), dtype=np.int64)
        np.fill_diagonal(a, 0)
        clustering = cluster_points(a)
        with pytest.raises(ValueError):
            evaluate_piecewise(table, clustering, [])

    def test_anscombe_one_cluster_bound(self):
        # a single-cluster modal fit is no worse, under its own loss, than
        # the textbook least-squares line
        table = generate_synthetic(SyntheticSpec("anscombe1"))
        norm = normalize(table)
        fit = fit_cluster(norm, range(11), cfg(), bins=48)
        q = fit.residuals.sum()
        ref_resid = np.abs(table.y - (3.0 + 0.5 * table.x[:, 0]))
        ref_q = (ref_resid / norm.params.spans[-1]).sum()
        assert q <= ref_q + 1e-12


class TestRefitCache:
    def test_cache_returns_identical_fits(self, rng):
        values = rng.uniform(0, 1, size=(16, 2))
        table = identity_table(values)
        cache: dict = {}
        a = fit_cluster(table, range(16), cfg(s=4, lam=0.05), bins=24, cand_cache=cache)
        b = fit_cluster(table, range(16), cfg(s=4, lam=0.05), bins=24, cand_cache=cache)
        plain = fit_cluster(table, range(16), cfg(s=4, lam=0.05), bins=24)
        assert len(cache) == 1
        for other in (b, plain):
            assert np.array_equal(a.plane_normalized.slopes, other.plane_normalized.slopes)
            assert a.plane_normalized.intercept == other.plane_normalized.intercept
