"""
Tests for the sphere and Grassmann manifolds.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baryopt.core.exceptions import (
    CutLocusError,
    DegenerateSpanError,
    DimensionMismatchError,
    InvalidParameterError,
    InvalidPointError,
    UnsupportedManifoldError,
)
from baryopt.manifolds import Grassmann, Point, Sphere, Tangent, get_manifold, grassmann_volume

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def _gen(seed):
    return np.random.Generator(np.random.Philox(seed))


def _random_tangent_of_norm(manifold, x, rng, radius):
    return manifold.random_unit_tangent(x, rng).scaled(radius)


# =============================================================================
# Sphere
# =============================================================================

class TestSphereConstants:

    def test_descriptor_of_s2(self, sphere):
        d = sphere.descriptor()
        assert d.dim == 2
        assert d.kappa_sq == 1.0
        assert d.r_cx == pytest.approx(math.pi / 2)
        assert d.diameter == pytest.approx(math.pi)
        assert d.volume == pytest.approx(4 * math.pi)
        assert d.omega_n == pytest.approx(2 * math.pi)
        assert d.injectivity_radius == pytest.approx(math.pi)

    def test_volume_of_s3(self):
        assert Sphere(3).volume == pytest.approx(2 * math.pi ** 2)

    def test_dimension_must_be_positive(self):
        with pytest.raises(InvalidParameterError):
            Sphere(0)

    def test_make_point_rejects_wrong_shape(self, sphere):
        with pytest.raises(DimensionMismatchError):
            sphere.make_point([1.0, 0.0])

    def test_make_point_rejects_off_manifold(self, sphere):
        with pytest.raises(InvalidPointError):
            sphere.make_point([1.0, 1.0, 0.0])

    def test_make_point_reprojects(self, sphere):
        x = sphere.make_point([0.0, 0.0, -2.0], reproject=True)
        np.testing.assert_allclose(x.coords, [0.0, 0.0, -1.0])

    def test_points_are_immutable(self, north_pole):
        with pytest.raises(ValueError):
            north_pole.coords[0] = 1.0


class TestSphereGeometry:

    def test_distance_between_axes(self, sphere, north_pole):
        east = Point(np.array([1.0, 0.0, 0.0]))
        assert sphere.distance(north_pole, east) == pytest.approx(math.pi / 2)

    def test_distance_precise_near_zero(self, sphere, north_pole):
        x = sphere.exp_map(north_pole, Tangent(north_pole, np.array([1e-9, 0.0, 0.0])))
        assert sphere.distance(north_pole, x) == pytest.approx(1e-9, rel=1e-6)

    def test_log_of_antipode_raises(self, sphere, north_pole):
        south = Point(np.array([0.0, 0.0, -1.0]))
        with pytest.raises(CutLocusError):
            sphere.log_map(north_pole, south)

    def test_minimizing_log_of_antipode(self, sphere, north_pole):
        south = Point(np.array([0.0, 0.0, -1.0]))
        v = sphere.minimizing_log(north_pole, south)
        assert sphere.norm(v) == pytest.approx(math.pi)
        reached = sphere.exp_map(north_pole, v)
        np.testing.assert_allclose(reached.coords, south.coords, atol=1e-12)

    def test_geodesic_interpolate_midpoint(self, sphere, north_pole):
        east = Point(np.array([1.0, 0.0, 0.0]))
        mid = sphere.geodesic_interpolate(north_pole, east, 0.5)
        np.testing.assert_allclose(mid.coords, [math.sqrt(0.5), 0.0, math.sqrt(0.5)], atol=1e-12)

    def test_geodesic_interpolate_weight_range(self, sphere, north_pole):
        with pytest.raises(InvalidParameterError):
            sphere.geodesic_interpolate(north_pole, north_pole, 1.5)

    def test_tangent_basis_is_orthonormal(self, sphere, rng):
        x = sphere.random_point(rng)
        basis = np.stack([b.vec for b in sphere.tangent_basis(x)])
        np.testing.assert_allclose(basis @ basis.T, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(basis @ x.coords, 0.0, atol=1e-12)

    def test_sectional_curvature_is_one(self, sphere, rng):
        x = sphere.random_point(rng)
        u, v = sphere.tangent_basis(x)
        assert sphere.sectional_curvature_probe(x, u, v) == pytest.approx(1.0, rel=1e-3)

    def test_curvature_probe_rejects_parallel_vectors(self, sphere, north_pole):
        u = Tangent(north_pole, np.array([1.0, 0.0, 0.0]))
        with pytest.raises(DegenerateSpanError):
            sphere.sectional_curvature_probe(north_pole, u, u.scaled(2.0))

    def test_batch_operations_match_scalar(self, sphere, rng):
        x = sphere.random_point(rng)
        targets = sphere.random_points(rng, 50)
        d = sphere.distance_many(x, targets)
        vectors, cut = sphere.log_many(x, targets)
        assert not cut.any()
        for i in range(len(targets)):
            assert d[i] == pytest.approx(sphere.distance(x, Point(targets[i])), abs=1e-12)
            np.testing.assert_allclose(vectors[i], sphere.log_map(x, Point(targets[i])).vec, atol=1e-12)
        np.testing.assert_allclose(sphere.exp_many(x, vectors), targets, atol=1e-10)


class TestSphereProperties:

    @settings(max_examples=200, deadline=None)
    @given(seed=seeds, radius=st.floats(min_value=0.0, max_value=3.0))
    def test_exp_log_round_trip(self, seed, radius):
        sphere = Sphere(3)
        rng = _gen(seed)
        x = sphere.random_point(rng)
        v = _random_tangent_of_norm(sphere, x, rng, radius)
        y = sphere.exp_map(x, v)
        assert sphere.point_residual(y.coords) < 1e-12
        np.testing.assert_allclose(sphere.log_map(x, y).vec, v.vec, atol=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(seed=seeds)
    def test_triangle_inequality(self, seed):
        sphere = Sphere(2)
        rng = _gen(seed)
        a, b, c = (sphere.random_point(rng) for _ in range(3))
        assert sphere.distance(a, c) <= sphere.distance(a, b) + sphere.distance(b, c) + 1e-12

    @settings(max_examples=200, deadline=None)
    @given(seed=seeds)
    def test_geodesic_symmetry_is_isometric_involution(self, seed):
        sphere = Sphere(2)
        rng = _gen(seed)
        center, x, y = (sphere.random_point(rng) for _ in range(3))
        sx = sphere.geodesic_symmetry(center, x)
        np.testing.assert_allclose(sphere.geodesic_symmetry(center, sx).coords, x.coords, atol=1e-12)
        assert sphere.distance(sx, sphere.geodesic_symmetry(center, y)) == pytest.approx(
            sphere.distance(x, y), abs=1e-10)
        assert sphere.distance(center, sx) == pytest.approx(sphere.distance(center, x), abs=1e-10)


# =============================================================================
# Grassmann
# =============================================================================

class TestGrassmannConstants:

    def test_descriptor_of_gr24(self, grassmann):
        d = grassmann.descriptor()
        assert d.dim == 8
        assert d.kappa_sq == 4.0
        assert d.r_cx == pytest.approx(math.pi / 4)
        assert d.diameter == pytest.approx(math.sqrt(2) * math.pi / 2)
        assert d.injectivity_radius == pytest.approx(math.pi / 2)
        assert d.volume == pytest.approx(math.pi ** 4 / 12)

    def test_projective_line_is_a_small_sphere(self):
        # Gr(1, C^2) is a round sphere of radius 1/2
        assert grassmann_volume(1, 2) == pytest.approx(math.pi)
        assert Grassmann(1, 2).diameter == pytest.approx(math.pi / 2)

    def test_k_must_be_proper(self):
        with pytest.raises(InvalidParameterError):
            Grassmann(4, 4)

    def test_random_point_is_projector(self, grassmann, rng):
        x = grassmann.random_point(rng)
        assert grassmann.point_residual(x.coords) < 1e-12
        assert np.trace(x.coords).real == pytest.approx(2.0)

    def test_make_point_rejects_non_projector(self, grassmann):
        with pytest.raises(InvalidPointError):
            grassmann.make_point(np.eye(4) * 0.5)


class TestGrassmannGeometry:

    def test_principal_angle_distance(self, grassmann):
        x = Point(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))
        theta = 0.3
        frame = np.zeros((4, 2), dtype=complex)
        frame[0, 0] = 1.0
        frame[1, 1] = math.cos(theta)
        frame[2, 1] = math.sin(theta)
        y = Point(grassmann.projector(frame))
        np.testing.assert_allclose(grassmann.principal_angles(x, y), [0.0, theta], atol=1e-12)
        assert grassmann.distance(x, y) == pytest.approx(theta)

    def test_log_raises_at_orthogonal_subspaces(self, grassmann):
        x = Point(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))
        y = Point(np.diag([0.0, 0.0, 1.0, 1.0]).astype(complex))
        with pytest.raises(CutLocusError):
            grassmann.log_map(x, y)
        v = grassmann.minimizing_log(x, y)
        assert grassmann.norm(v) == pytest.approx(math.sqrt(2) * math.pi / 2)

    def test_tangent_basis_is_orthonormal(self, grassmann, rng):
        x = grassmann.random_point(rng)
        basis = grassmann.tangent_basis(x)
        assert len(basis) == grassmann.dim
        gram = np.array([[grassmann.inner(x, a.vec, b.vec) for b in basis] for a in basis])
        np.testing.assert_allclose(gram, np.eye(grassmann.dim), atol=1e-12)
        for b in basis:
            assert grassmann.tangent_residual(x, b.vec) < 1e-12

    def test_holomorphic_curvature_is_four(self):
        manifold = Grassmann(1, 2)
        x = Point(np.diag([1.0, 0.0]).astype(complex))
        u, v = manifold.tangent_basis(x)
        assert manifold.sectional_curvature_probe(x, u, v) == pytest.approx(4.0, rel=1e-2)

    def test_batch_distance_matches_scalar(self, grassmann, rng):
        x = grassmann.random_point(rng)
        targets = grassmann.random_points(rng, 20)
        batch = grassmann.distance_many(x, targets)
        for i in range(len(targets)):
            assert batch[i] == pytest.approx(grassmann.distance(x, Point(targets[i])), abs=1e-10)

    def test_geodesic_symmetry_fixes_center(self, grassmann, rng):
        x = grassmann.random_point(rng)
        np.testing.assert_allclose(grassmann.geodesic_symmetry(x, x).coords, x.coords, atol=1e-12)


class TestGrassmannProperties:

    @settings(max_examples=100, deadline=None)
    @given(seed=seeds, radius=st.floats(min_value=0.0, max_value=1.2))
    def test_exp_log_round_trip(self, seed, radius):
        manifold = Grassmann(2, 4)
        rng = _gen(seed)
        x = manifold.random_point(rng)
        v = _random_tangent_of_norm(manifold, x, rng, radius)
        y = manifold.exp_map(x, v)
        # principal angles stay below pi/2 only when every angle of v does
        if np.max(manifold.principal_angles(x, y)) > 1.5:
            return
        back = manifold.log_map(x, y)
        assert manifold.distance(y, manifold.exp_map(x, back)) < 1e-8

    @settings(max_examples=100, deadline=None)
    @given(seed=seeds)
    def test_triangle_inequality(self, seed):
        manifold = Grassmann(2, 4)
        rng = _gen(seed)
        a, b, c = (manifold.random_point(rng) for _ in range(3))
        assert manifold.distance(a, c) <= manifold.distance(a, b) + manifold.distance(b, c) + 1e-10

    @settings(max_examples=100, deadline=None)
    @given(seed=seeds)
    def test_geodesic_symmetry_is_isometric_involution(self, seed):
        manifold = Grassmann(2, 4)
        rng = _gen(seed)
        center, x, y = (manifold.random_point(rng) for _ in range(3))
        sx = manifold.geodesic_symmetry(center, x)
        assert manifold.distance(manifold.geodesic_symmetry(center, sx), x) < 1e-7
        assert manifold.distance(sx, manifold.geodesic_symmetry(center, y)) == pytest.approx(
            manifold.distance(x, y), abs=1e-8)

    def test_projector_invariants_survive_chained_operations(self, rng):
        manifold = Grassmann(2, 4)
        x = manifold.random_point(rng)
        for _ in range(2000):
            x = manifold.exp_map(x, manifold.random_tangent(x, rng).scaled(0.1))
        assert manifold.point_residual(x.coords) < manifold.point_tolerance


class TestFactory:

    def test_builds_sphere(self):
        m = get_manifold({"name": "sphere", "n": 3})
        assert isinstance(m, Sphere) and m.n == 3

    def test_builds_grassmann(self):
        m = get_manifold({"name": "grassmann", "k": 1, "n": 3})
        assert isinstance(m, Grassmann) and m.dim == 4

    def test_unknown_name(self):
        with pytest.raises(UnsupportedManifoldError):
            get_manifold({"name": "torus"})
