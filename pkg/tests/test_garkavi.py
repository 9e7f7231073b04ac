import numpy as np
import pytest

from supcenter.errors import ModelBuildError
from supcenter.garkavi import (
    build_model,
    center_trend,
    gauge_decomposition,
    gauge_norm,
    half_ball_check,
    metric_projection,
    subspace_gauge_distance,
    _gauge_facets,
)
from supcenter.space import _hausdorff_points


@pytest.fixture(scope="module")
def model3():
    return build_model(3, seed=0)


@pytest.fixture(scope="module")
def model4():
    return build_model(4, seed=0)


class TestBuild:
    def test_certificates_positive(self, model3):
        for name, margin in model3.certificates.items():
            if name in ("disjoint", "x0-gauge-gap"):
                continue
            assert margin > 0.0, f"certificate {name} has margin {margin}"

    def test_alpha_exact(self, model3, model4):
        # the slab level is (1 - 2 gamma) - gamma independent of dimension
        for model in (model3, model4):
            assert model.alpha == pytest.approx(1.0 - 3.0 * model.gamma, abs=1e-12)
            assert model.alpha == pytest.approx(0.8125, abs=1e-12)

    def test_x0_has_unit_gauge(self, model3):
        assert model3.certificates["x0-gauge-gap"] <= 1e-7

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            build_model(2)
        with pytest.raises(ValueError):
            build_model(3, gamma=0.2)
        with pytest.raises(ValueError):
            build_model(3, theta=-1e-3)

    def test_zero_shrink_fails_disjointness(self):
        with pytest.raises(ModelBuildError) as exc:
            build_model(3, theta=0.0)
        assert exc.value.certificate == "disjoint"

    def test_norm_equivalence_constants(self, model3):
        rng = np.random.default_rng(5)
        for _ in range(10):
            x = rng.uniform(-1, 1, 3)
            g = gauge_norm(model3, x)
            sup = float(np.max(np.abs(x)))
            assert model3.c_lower * sup <= g + 1e-9
            assert g <= model3.c_upper * sup + 1e-9


class TestGauge:
    def test_two_routes_agree(self, model3, model4):
        rng = np.random.default_rng(11)
        for model in (model3, model4):
            for _ in range(15):
                x = rng.uniform(-2, 2, model.n)
                lp_route = gauge_norm(model, x)
                facet_route = _gauge_facets(model, x)
                assert lp_route == pytest.approx(facet_route, abs=1e-7)

    def test_homogeneity_and_zero(self, model3):
        x = np.array([0.3, -0.2, 0.7])
        assert gauge_norm(model3, 2.0 * x) == pytest.approx(2.0 * gauge_norm(model3, x), abs=1e-8)
        assert gauge_norm(model3, np.zeros(3)) == pytest.approx(0.0, abs=1e-9)

    def test_triangle_inequality(self, model3):
        rng = np.random.default_rng(13)
        for _ in range(10):
            x, y = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
            assert gauge_norm(model3, x + y) <= (
                gauge_norm(model3, x) + gauge_norm(model3, y) + 1e-8)

    def test_hull_points_inside(self, model3):
        for p in model3.hull_points:
            assert _gauge_facets(model3, p) <= 1.0 + 1e-9

    def test_decomposition_reassembles(self, model3):
        x = np.array([0.8, 0.1, -0.4])
        value, (u, vp, vm, p, q, r) = gauge_decomposition(model3, x)
        assert np.allclose(u + vp - vm, x, atol=1e-9)
        assert value == pytest.approx(p + q + r, abs=1e-9)
        assert min(p, q, r) >= -1e-12


class TestProjection:
    def test_distance_to_x0_is_one(self, model3):
        dist, nearest = subspace_gauge_distance(model3, model3.x0)
        assert dist == pytest.approx(1.0, abs=1e-8)
        assert abs(nearest[0]) <= 1e-9

    def test_projection_of_x0_is_small_cube(self, model3, model4):
        for model in (model3, model4):
            proj = metric_projection(model, model.x0, 0.0)
            gap = _hausdorff_points(proj.vertices(), model.small_ball.vertices())
            assert gap <= 1e-6

    def test_projection_members_certified(self, model3):
        rng = np.random.default_rng(17)
        x = np.array([1.3, 0.2, -0.1])
        dist, _ = subspace_gauge_distance(model3, x)
        proj = metric_projection(model3, x, 0.05)
        for v in proj.vertices():
            assert v[0] == pytest.approx(0.0, abs=1e-9)
            assert _gauge_facets(model3, x - v) <= dist + 0.05 + 1e-8

    def test_negative_eps_rejected(self, model3):
        with pytest.raises(ValueError):
            metric_projection(model3, model3.x0, -0.1)


class TestHalfBall:
    def test_passes_on_small_sample(self, model3):
        report = half_ball_check(model3, samples=3, eps_values=(0.2, 0.1), seed=2)
        assert report.passed
        assert len(report.samples) == 6

    def test_replay_bound_tight_enough(self, model3):
        report = half_ball_check(model3, samples=2, eps_values=(0.15,), seed=3)
        for eta, bound, achieved in report.replay_rows:
            assert bound == pytest.approx(eta - 1.0, abs=1e-12)
            assert achieved <= bound + report.tol

    def test_dimension_four(self, model4):
        report = half_ball_check(model4, samples=2, eps_values=(0.2,), seed=4)
        assert report.passed


def test_center_trend_rows():
    rows = center_trend((3, 4), seed=0)
    assert [r.n for r in rows] == [3, 4]
    for row in rows:
        assert row.radius > 0.0
        # the two-point family pins its centers near the critical level
        assert row.phi_at_center == pytest.approx(row.alpha, abs=0.05)
