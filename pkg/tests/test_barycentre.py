"""
Tests for the barycentre engine and the Monte-Carlo estimators.
"""
import math

import numpy as np
import pytest

from baryopt.barycentre import (
    BarycentreTracker,
    TrajectoryRecorder,
    batch_frechet_mean,
    empirical_energy,
    estimate_E_T,
    estimate_gradient,
    estimate_hessian_form,
    estimate_hessian_forms,
    hessian_form_fd,
    jackknife,
    log_log_slope,
    mean_log,
    wasserstein_to_dirac,
)
from baryopt.core.exceptions import ConvergenceError, InvalidParameterError, UnsupportedManifoldError
from baryopt.manifolds import Point, Tangent
from baryopt.sampling import VonMisesFisherKernel, run_chain


def vmf_cloud(sphere, center, kappa, size, rng):
    kernel = VonMisesFisherKernel(sphere, kappa)
    return np.stack([kernel.propose(center, rng).coords for _ in range(size)])


def fibonacci_mesh(size):
    """Nearly uniform points on S^2."""
    i = np.arange(size) + 0.5
    height = 1.0 - 2.0 * i / size
    angle = math.pi * (1.0 + math.sqrt(5.0)) * i
    radius = np.sqrt(1.0 - height ** 2)
    return np.column_stack([radius * np.cos(angle), radius * np.sin(angle), height])


EAST = np.array([1.0, 0.0, 0.0])
NORTH = np.array([0.0, 0.0, 1.0])


class TestJackknife:

    def test_small_samples_reduce_to_standard_error(self, rng):
        values = rng.standard_normal(40)
        mean, error = jackknife(values, n_blocks=100)
        assert mean == pytest.approx(values.mean())
        assert error == pytest.approx(values.std(ddof=1) / math.sqrt(40), rel=1e-10)

    def test_vector_values(self, rng):
        values = rng.standard_normal((1000, 3))
        mean, error = jackknife(values)
        assert mean.shape == (3,)
        assert error.shape == (3,)
        assert np.all(error > 0.0)
        np.testing.assert_allclose(error, values.std(axis=0, ddof=1) / math.sqrt(1000), rtol=0.3)

    def test_edge_cases(self):
        with pytest.raises(InvalidParameterError):
            jackknife(np.array([]))
        mean, error = jackknife(np.array([2.5]))
        assert mean == 2.5
        assert error == 0.0


class TestEstimators:

    def test_energy(self, sphere, north_pole):
        samples = np.stack([NORTH, EAST])
        estimate = estimate_E_T(sphere, north_pole, samples)
        assert estimate.value == pytest.approx(math.pi ** 2 / 16.0)
        assert estimate.n_samples == 2
        assert empirical_energy(sphere, north_pole, samples) == pytest.approx(estimate.value)

    def test_gradient_points_away_from_a_single_sample(self, sphere, north_pole):
        gradient = estimate_gradient(sphere, north_pole, np.stack([EAST] * 10))
        assert gradient.norm == pytest.approx(math.pi / 2.0)
        np.testing.assert_allclose(gradient.vector.vec, [-math.pi / 2.0, 0.0, 0.0], atol=1e-12)
        assert gradient.noise_norm == pytest.approx(0.0, abs=1e-12)

    def test_gradient_vanishes_for_symmetric_samples(self, sphere, north_pole):
        samples = np.stack([EAST, -EAST, [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]])
        assert estimate_gradient(sphere, north_pole, samples).norm == pytest.approx(0.0, abs=1e-12)

    def test_gradient_drops_cut_locus(self, sphere, north_pole):
        samples = np.stack([EAST, -NORTH])
        gradient = estimate_gradient(sphere, north_pole, samples)
        assert gradient.n_dropped == 1
        assert gradient.n_samples == 1
        with pytest.raises(InvalidParameterError):
            estimate_gradient(sphere, north_pole, np.stack([-NORTH]))

    def test_hessian_form_closed_form(self, sphere, north_pole):
        r = 0.5
        along_x = np.array([math.sin(r), 0.0, math.cos(r)])
        u = Tangent(north_pole, np.array([0.0, 1.0, 0.0]))
        transverse = estimate_hessian_form(sphere, north_pole, u, np.stack([along_x]))
        assert transverse.value == pytest.approx(r / math.tan(r))
        radial = estimate_hessian_form(sphere, north_pole, Tangent(north_pole, EAST), np.stack([along_x]))
        assert radial.value == pytest.approx(1.0)
        at_x = estimate_hessian_form(sphere, north_pole, u, np.stack([NORTH]))
        assert at_x.value == pytest.approx(1.0)

    def test_hessian_form_matches_finite_differences(self, sphere, north_pole, rng):
        samples = vmf_cloud(sphere, north_pole, 50.0, 2000, rng)
        x = sphere.exp_map(north_pole, Tangent(north_pole, np.array([0.05, 0.0, 0.0])))
        directions = [sphere.random_unit_tangent(x, rng) for _ in range(3)]
        closed = estimate_hessian_forms(sphere, x, directions, samples)
        for u, estimate in zip(directions, closed):
            fd = hessian_form_fd(sphere, x, u, samples, h=1e-3)
            assert fd.value == pytest.approx(estimate.value, rel=1e-4)
            assert estimate.value < 1.0

    def test_hessian_form_validation(self, sphere, grassmann, north_pole, rng):
        with pytest.raises(InvalidParameterError):
            estimate_hessian_form(sphere, north_pole, Tangent(north_pole, 2.0 * EAST), np.stack([EAST]))
        with pytest.raises(InvalidParameterError, match="not tangent"):
            estimate_hessian_form(sphere, north_pole, Tangent(north_pole, NORTH), np.stack([EAST]))
        x = grassmann.random_point(rng)
        u = grassmann.random_unit_tangent(x, rng)
        with pytest.raises(UnsupportedManifoldError):
            estimate_hessian_form(grassmann, x, u, np.stack([x.coords]))
        with pytest.raises(InvalidParameterError):
            hessian_form_fd(grassmann, x, u, np.stack([x.coords]), h=0.0)

    def test_wasserstein(self, sphere, north_pole):
        estimate = wasserstein_to_dirac(sphere, north_pole, np.stack([NORTH, EAST, -NORTH]))
        assert estimate.value == pytest.approx(math.pi / 2.0)

    def test_log_log_slope(self):
        temperatures = np.array([0.01, 0.02, 0.04, 0.08])
        assert log_log_slope(temperatures, 3.0 * np.sqrt(temperatures)) == pytest.approx(0.5)
        assert math.isnan(log_log_slope(np.array([0.1]), np.array([1.0])))
        assert math.isnan(log_log_slope(temperatures, np.array([1.0, 0.0, 1.0, 1.0])))


class TestFrechetMean:

    def test_midpoint_of_two_points(self, sphere):
        a = np.array([1.0, 0.0, 0.0])
        b = np.array([0.0, 1.0, 0.0])
        mean = batch_frechet_mean(np.stack([a, b]), sphere)
        np.testing.assert_allclose(mean.coords, [math.sqrt(0.5), math.sqrt(0.5), 0.0], atol=1e-9)

    def test_single_and_empty(self, sphere):
        assert batch_frechet_mean(np.stack([EAST]), sphere).coords.tolist() == EAST.tolist()
        with pytest.raises(InvalidParameterError):
            batch_frechet_mean(np.empty((0, 3)), sphere)

    def test_stationary_point(self, sphere, north_pole, rng):
        samples = vmf_cloud(sphere, north_pole, 10.0, 500, rng)
        mean = batch_frechet_mean(samples, sphere)
        assert np.linalg.norm(mean_log(sphere, mean, samples)) < 1e-9

    def test_iteration_budget(self, sphere):
        samples = np.stack([EAST, NORTH, [0.0, math.sqrt(0.5), math.sqrt(0.5)]])
        with pytest.raises(ConvergenceError):
            batch_frechet_mean(samples, sphere, tol=1e-14, max_iter=1)

    def test_antipodal_sample_uses_tie_break(self, sphere, north_pole):
        vector = mean_log(sphere, north_pole, np.stack([-NORTH]))
        np.testing.assert_allclose(vector, math.pi * sphere.cut_direction(north_pole), atol=1e-12)

    def test_matches_mesh_minimum(self, sphere, rng):
        center = sphere.random_point(rng)
        samples = vmf_cloud(sphere, center, 5.0, 300, rng)
        mean = batch_frechet_mean(samples, sphere)
        mesh = fibonacci_mesh(20_000)
        energies = np.array([empirical_energy(sphere, Point(p), samples) for p in mesh])
        best = Point(mesh[int(np.argmin(energies))])
        assert empirical_energy(sphere, mean, samples) <= energies.min() + 1e-12
        assert sphere.distance(mean, best) < 0.05

    def test_grassmann_symmetric_samples(self, grassmann, rng):
        center = grassmann.random_point(rng)
        samples = []
        for _ in range(5):
            v = grassmann.random_unit_tangent(center, rng).scaled(0.3)
            samples.append(grassmann.exp_map(center, v).coords)
            samples.append(grassmann.exp_map(center, v.scaled(-1.0)).coords)
        mean = batch_frechet_mean(np.stack(samples), grassmann)
        assert grassmann.distance(mean, center) < 1e-8


class TestTracker:

    def test_first_updates(self, sphere):
        tracker = BarycentreTracker(sphere)
        tracker.update(Point(np.array([1.0, 0.0, 0.0])))
        assert tracker.count == 1
        assert tracker.x_hat.coords.tolist() == [1.0, 0.0, 0.0]
        tracker.update(Point(np.array([0.0, 1.0, 0.0])))
        np.testing.assert_allclose(tracker.x_hat.coords, [math.sqrt(0.5), math.sqrt(0.5), 0.0], atol=1e-12)
        assert tracker.to_dict()["count"] == 2

    def test_streaming_tracks_batch_mean(self, sphere, north_pole, rng):
        samples = vmf_cloud(sphere, north_pole, 50.0, 10_000, rng)
        tracker = BarycentreTracker(sphere)
        for coords in samples:
            tracker.update(Point(coords))
        batch = batch_frechet_mean(samples, sphere)
        assert sphere.distance(tracker.x_hat, batch) < 1e-2

    def test_recorder_stride_and_finish(self, sphere, legendre, north_pole):
        recorder = TrajectoryRecorder(sphere, legendre, x_star=north_pole, stride=3)
        for n in range(8):
            recorder.record(n, north_pole)
        recorder.finish(7, north_pole)
        recorder.finish(7, north_pole)
        assert [row[0] for row in recorder.rows] == [0, 3, 6, 7]
        assert recorder.header == ["n", "xhat0", "xhat1", "xhat2", "distance", "U"]
        assert recorder.rows[0][-2] == 0.0
        assert recorder.rows[0][-1] == pytest.approx(-1.0)

    def test_recorder_without_minimizer(self, sphere, legendre, north_pole, tmp_path):
        recorder = TrajectoryRecorder(sphere, legendre)
        recorder.finish(0, north_pole)
        assert recorder.rows[0][-2] == ""
        path = recorder.write(str(tmp_path / "trajectory.csv"))
        with open(path, encoding="utf-8") as f:
            assert f.readline().strip() == "n,xhat0,xhat1,xhat2,distance,U"

    def test_recorder_rejects_zero_stride(self, sphere, legendre):
        with pytest.raises(InvalidParameterError):
            TrajectoryRecorder(sphere, legendre, stride=0)


class TestGibbsFunctionals:

    @staticmethod
    def chain(legendre, sphere, north_pole, temperature, kappa, steps, seed):
        kernel = VonMisesFisherKernel(sphere, kappa)
        return run_chain(north_pole, legendre, temperature, kernel, steps, steps // 20, seed)

    def test_concentration_halves_with_quarter_temperature(self, legendre, sphere, north_pole):
        # near x* the Gibbs law is Gaussian with variance T / 45 per direction
        distances = []
        for temperature in (0.02, 0.005):
            run = self.chain(legendre, sphere, north_pole, temperature, 45.0 / temperature, 40_000, 13)
            distances.append(wasserstein_to_dirac(sphere, north_pole, run.samples).value)
        assert distances[0] / distances[1] == pytest.approx(2.0, rel=0.25)

    def test_energy_at_minimizer_matches_quadrature(self, legendre, sphere, north_pole, zonal_oracle):
        temperature = 0.2
        run = self.chain(legendre, sphere, north_pole, temperature, 5.0, 80_000, 17)
        estimate = estimate_E_T(sphere, north_pole, run.samples)
        expected = zonal_oracle(9, temperature, lambda h: 0.5 * math.acos(min(max(h, -1.0), 1.0)) ** 2)
        assert estimate.value == pytest.approx(expected, abs=max(4.0 * estimate.std_error, 0.01))
