"""
Tests for the analytic constants, bound functions and threshold solvers.
"""
import dataclasses
import json
import math

import numpy as np
import pytest
from scipy import integrate

from baryopt.core.exceptions import InvalidParameterError
from baryopt.manifolds import Grassmann, Sphere
from baryopt.manifolds.base import sphere_area
from baryopt.objectives.profile import GapFunction
from baryopt.temperature import (
    ConstantsTable,
    barycentre_radius_bound,
    beta_half,
    compute_temperature_report,
    concentration_rhs,
    convergence_factor,
    convexity_rhs,
    convexity_threshold,
    ct_convexity,
    ergodicity_floor,
    f_gibbs_tail,
    f_truncation,
    find_crossing,
    gaussian_abs_moment,
    moment_ratio_identity,
    partition_lower_bound,
    polar_volume,
    solve_T_delta,
    solve_T_o,
    structural_constant_A_M,
    tail_mass_bound,
)
from baryopt.temperature.bounds import log_f_truncation


class TestConstants:

    @pytest.mark.parametrize("k", range(0, 12))
    def test_gaussian_moment_matches_quadrature(self, k):
        value, _ = integrate.quad(lambda x: x ** k * math.exp(-0.5 * x * x), 0.0, math.inf,
                                  epsabs=0.0, epsrel=1e-13, limit=200)
        expected = 2.0 * value / math.sqrt(2.0 * math.pi)
        assert gaussian_abs_moment(k) == pytest.approx(expected, rel=1e-9)

    def test_known_moments(self):
        assert gaussian_abs_moment(0) == pytest.approx(1.0)
        assert gaussian_abs_moment(1) == pytest.approx(math.sqrt(2.0 / math.pi))
        assert gaussian_abs_moment(2) == pytest.approx(1.0)
        assert gaussian_abs_moment(4) == pytest.approx(3.0)

    @pytest.mark.parametrize("n", [1, 2, 3, 8, 30])
    def test_moment_ratio_identity(self, n):
        ratio = gaussian_abs_moment(n) / gaussian_abs_moment(n - 1)
        assert moment_ratio_identity(n) == pytest.approx(ratio, rel=1e-12)

    def test_beta_and_sphere_area(self):
        assert beta_half(2) == pytest.approx(2.0)
        assert beta_half(1) == pytest.approx(math.pi)
        assert sphere_area(2) == pytest.approx(2.0 * math.pi)
        assert sphere_area(3) == pytest.approx(4.0 * math.pi)

    def test_ct_small_argument_limit(self):
        assert ct_convexity(0.5e-6, 1.0) == pytest.approx(1.0, abs=1e-9)
        x = 0.8
        assert ct_convexity(x / 4.0, 2.0) == pytest.approx(x / math.tan(x))

    @pytest.mark.parametrize("delta", [0.0, math.pi / 4.0, 1.0])
    def test_ct_rejects_out_of_range(self, delta):
        with pytest.raises(InvalidParameterError):
            ct_convexity(delta, 1.0)

    def test_table_for_sphere(self, sphere):
        table = ConstantsTable.for_manifold(sphere)
        assert table.n == 2
        assert table.omega_n == pytest.approx(2.0 * math.pi)
        assert table.B_n == pytest.approx(2.0)
        assert table.volume == pytest.approx(4.0 * math.pi)
        assert table.a(7) == pytest.approx(gaussian_abs_moment(7))
        json.dumps(table.to_dict())


class TestPolar:

    def test_sphere_volume(self, sphere):
        assert polar_volume(sphere) == pytest.approx(4.0 * math.pi, rel=1e-8)
        assert polar_volume(Sphere(3)) == pytest.approx(2.0 * math.pi ** 2, rel=1e-8)

    def test_grassmann_volume(self, grassmann):
        assert polar_volume(grassmann) == pytest.approx(math.pi ** 4 / 12.0, rel=1e-3)
        assert polar_volume(grassmann) == pytest.approx(grassmann.volume, rel=1e-3)

    def test_structural_constant(self, sphere, grassmann):
        assert structural_constant_A_M(sphere) == pytest.approx(2.0 * math.pi ** 2, rel=1e-8)
        assert structural_constant_A_M(grassmann) == pytest.approx(math.pi ** 6 / 8.0, rel=1e-3)

    def test_projective_line(self):
        # Gr(1, C^2) is a round sphere of radius 1/2
        assert polar_volume(Grassmann(1, 2)) == pytest.approx(math.pi, rel=1e-6)


class TestBounds:

    def test_temperature_must_be_positive(self, legendre_profile, sphere):
        with pytest.raises(InvalidParameterError):
            f_truncation(0.0, 1, 0.1, legendre_profile)
        with pytest.raises(InvalidParameterError):
            partition_lower_bound(-1.0, legendre_profile, sphere)

    def test_delta_must_be_small(self, legendre_profile, sphere):
        with pytest.raises(InvalidParameterError):
            f_gibbs_tail(0.1, sphere.r_cx, legendre_profile, sphere)

    def test_concentration_scales_as_sqrt_t(self, legendre_profile, sphere):
        table = ConstantsTable.for_manifold(sphere)
        low = concentration_rhs(0.01, legendre_profile, sphere, table)
        high = concentration_rhs(0.04, legendre_profile, sphere, table)
        assert high / low == pytest.approx(2.0)

    def test_convexity_rhs_tends_to_ct(self, legendre_profile, sphere):
        delta = 0.3 * sphere.r_cx
        a_m = structural_constant_A_M(sphere)
        assert convexity_rhs(1e-6, delta, legendre_profile, sphere, a_m) == pytest.approx(
            ct_convexity(delta, 1.0), rel=1e-9)
        level = convexity_threshold(delta, sphere, a_m)
        assert 0.0 < level < 1.0 / sphere.volume

    def test_tail_mass_grows_with_temperature(self, legendre_profile, sphere):
        delta = 0.3 * sphere.r_cx
        small = tail_mass_bound(0.01, delta, legendre_profile, sphere)
        large = tail_mass_bound(0.05, delta, legendre_profile, sphere)
        assert 0.0 < small < large

    def test_radius_bound(self):
        assert barycentre_radius_bound(1.0, math.pi) == pytest.approx(math.sqrt(4.0 * math.pi))
        assert barycentre_radius_bound(0.0, 1.0) == 0.0
        with pytest.raises(InvalidParameterError):
            barycentre_radius_bound(-1.0, 1.0)

    def test_ergodicity_floor(self):
        assert ergodicity_floor(1.0, 0.0, 5.0, 4.0 * math.pi) == 0.0
        assert ergodicity_floor(1.0, 0.5, 1.0, 4.0 * math.pi) == pytest.approx(2.0 * math.pi / math.e)

    @pytest.mark.parametrize("oscillation", [0.5, 2.0])
    def test_ergodicity_floor_halved_temperature(self, oscillation):
        T = 0.4
        hot = ergodicity_floor(T, 0.3, oscillation, 4.0 * math.pi)
        cold = ergodicity_floor(T / 2.0, 0.3, oscillation, 4.0 * math.pi)
        assert cold / hot == pytest.approx(math.exp(-oscillation / T))

    def test_convergence_factor(self):
        assert convergence_factor(0.5, 3) == pytest.approx(0.125)
        assert convergence_factor(0.0, 10) == 1.0
        with pytest.raises(InvalidParameterError):
            convergence_factor(1.5, 1)


class TestCrossing:

    def test_bracket_contains_root(self):
        crossing = find_crossing(math.log, math.log(2.0))
        assert crossing.found
        assert crossing.lower <= 2.0 <= crossing.upper
        assert math.log(crossing.lower) <= math.log(2.0) < math.log(crossing.upper)
        assert crossing.upper - crossing.lower <= 1e-11 * crossing.upper

    def test_no_crossing_returns_top(self):
        crossing = find_crossing(lambda t: -1.0, 0.0, top=10.0)
        assert not crossing.found
        assert crossing.lower == crossing.upper == 10.0

    def test_holds_from_the_start(self):
        crossing = find_crossing(lambda t: 1.0, 0.0)
        assert crossing.found
        assert crossing.lower == crossing.upper == 1e-12
        assert crossing.value > 0.0

    def test_rejects_bad_scan(self):
        with pytest.raises(InvalidParameterError):
            find_crossing(math.log, 0.0, start=2.0, top=1.0)


class TestThresholds:

    @pytest.fixture(scope="class")
    def report(self, legendre_profile):
        sphere = Sphere(2)
        return compute_temperature_report(legendre_profile, sphere, 0.3 * sphere.r_cx)

    def test_ordering(self, report):
        assert report.T_o > 0.0
        assert math.isfinite(report.T_o)
        assert 0.0 < report.T_delta < report.T_o
        assert report.T_o == min(report.T_o1, report.T_o2)
        assert report.T_delta == pytest.approx(min(report.T_delta1, report.T_delta2) - report.epsilon)

    @staticmethod
    def _truncation_violated(T, report, profile, sphere):
        n = sphere.dim
        orders = {"T_o1": n - 2, "T_o2": n + 1}
        return {key: log_f_truncation(T, m, profile.rho, profile) > math.log(report.levels[key])
                for key, m in orders.items()}

    def test_brackets_are_directional(self, report, legendre_profile, sphere):
        below = self._truncation_violated(report.T_o * (1.0 - 1e-6), report, legendre_profile, sphere)
        assert not any(below.values())
        for key in ("T_o1", "T_o2"):
            bracket = report.brackets[key]
            assert bracket.lower <= bracket.upper
            if bracket.found:
                T = bracket.upper * (1.0 + 1e-6)
                above = self._truncation_violated(T, report, legendre_profile, sphere)
                assert above[key]
            else:
                assert bracket.lower == bracket.upper == 1e6

        tail = report.brackets["T_delta2"]
        level = report.levels["T_delta2"]
        if tail.found:
            assert f_gibbs_tail(tail.upper * (1.0 + 1e-6), report.delta, legendre_profile, sphere) > level
            assert f_gibbs_tail(tail.lower * (1.0 - 1e-6), report.delta, legendre_profile, sphere) <= level
        else:
            # no crossing below T_o: the scan ceiling T_o is returned
            assert tail.lower == tail.upper == report.T_o
            assert report.T_delta2 == report.T_o

    def test_threshold_matches_dense_grid(self, report, legendre_profile, sphere):
        grid = np.geomspace(1e-10, 1e6, 40_001)
        first = None
        for i, T in enumerate(grid):
            if any(self._truncation_violated(float(T), report, legendre_profile, sphere).values()):
                first = i
                break
        assert first is not None and first > 0
        assert grid[first - 1] * (1.0 - 1e-9) <= report.T_o <= grid[first] * (1.0 + 1e-9)

    def test_threshold_below_scan_start(self, legendre_profile):
        sphere = Sphere(2)
        flat = GapFunction(np.array([1.0]), np.array([0.0]), np.array([]), np.array([]), 0.0)
        profile = dataclasses.replace(legendre_profile, gap=flat)
        report = compute_temperature_report(profile, sphere, 0.3 * sphere.r_cx)
        assert report.T_o == 1e-12
        assert report.brackets["T_o2"].lower == report.brackets["T_o2"].upper == 1e-12
        assert 0.0 < report.T_delta < report.T_o

    def test_delta_threshold_needs_positive_t_o(self, legendre_profile, sphere):
        table = ConstantsTable.for_manifold(sphere)
        with pytest.raises(InvalidParameterError):
            solve_T_delta(0.3 * sphere.r_cx, None, 0.0, legendre_profile, sphere, table)

    def test_report_is_reproducible(self, report, legendre_profile):
        sphere = Sphere(2)
        again = compute_temperature_report(legendre_profile, sphere, 0.3 * sphere.r_cx)
        assert again.to_dict() == report.to_dict()
        json.dumps(report.to_dict())

    def test_explicit_epsilon(self, report, legendre_profile, sphere):
        table = ConstantsTable.for_manifold(sphere)
        t_o = solve_T_o(legendre_profile, sphere, table)
        assert t_o.value == report.T_o
        epsilon = 0.5 * min(report.T_delta1, report.T_delta2)
        result = solve_T_delta(report.delta, epsilon, t_o.value, legendre_profile, sphere, table)
        assert result.value == pytest.approx(epsilon)
        with pytest.raises(InvalidParameterError):
            solve_T_delta(report.delta, 2.0 * epsilon, t_o.value, legendre_profile, sphere, table)

    def test_delta_out_of_range(self, legendre_profile, sphere):
        with pytest.raises(InvalidParameterError):
            compute_temperature_report(legendre_profile, sphere, sphere.r_cx)

    def test_concentration_rhs_finite_at_threshold(self, report, legendre_profile, sphere):
        value = concentration_rhs(report.T_delta, legendre_profile, sphere, report.constants)
        assert np.isfinite(value)
        assert value > 0.0
