"""
Pytest configuration and shared fixtures for baryopt tests.
"""
import os
import sys

import numpy as np
import pytest
from scipy import integrate

# Add the project root to Python path so we can import modules
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from baryopt.manifolds import Grassmann, Point, Sphere  # noqa: E402
from baryopt.objectives import LegendreObjective, estimate_minimizer_profile  # noqa: E402
from baryopt.objectives.legendre import legendre_p  # noqa: E402

# Reduced profiling effort; the thresholds only need a consistent profile.
FAST_PROFILE = {
    "sandwich_samples": 2000,
    "cloud_size": 50_000,
    "shell_radii": 100,
    "shell_directions": 16,
    "refine_bands": 8,
    "refine_iterations": 50,
}


@pytest.fixture
def rng():
    """Seeded generator, fresh per test."""
    return np.random.Generator(np.random.Philox(12345))


@pytest.fixture
def sphere():
    return Sphere(2)


@pytest.fixture
def grassmann():
    return Grassmann(2, 4)


@pytest.fixture
def north_pole():
    return Point(np.array([0.0, 0.0, 1.0]))


@pytest.fixture
def legendre(sphere):
    return LegendreObjective(sphere, degree=9, axis=2)


@pytest.fixture(scope="session")
def legendre_profile():
    """Minimizer profile of -P_9(x_3) on S^2 at the north pole."""
    return estimate_minimizer_profile(LegendreObjective(Sphere(2), degree=9, axis=2), **FAST_PROFILE)


def zonal_gibbs_mean(degree: int, temperature: float, fn=lambda h: h) -> float:
    """
    Exact E[fn(x_3)] under exp(P_degree(x_3)/T) on S^2.

    The area element of S^2 is uniform in the height x_3, so the Gibbs law of
    x_3 has density proportional to exp(P(h)/T) on [-1, 1].
    """
    def weight(h: float) -> float:
        return float(np.exp(legendre_p(degree, h) / temperature))

    mass, _ = integrate.quad(weight, -1.0, 1.0, limit=200)
    moment, _ = integrate.quad(lambda h: fn(h) * weight(h), -1.0, 1.0, limit=200)
    return moment / mass


@pytest.fixture
def zonal_oracle():
    return zonal_gibbs_mean


@pytest.fixture
def sample_config(tmp_path):
    """A small, valid blind-mode configuration mapping."""
    return {
        "manifold": {"name": "sphere", "n": 2},
        "objective": {"name": "legendre9"},
        "mode": "blind",
        "temperature": 0.2,
        "init": [0.0, 0.0, -1.0],
        "chain": {"steps": 200, "trajectory_stride": 10},
        "seeds": [0, 1],
        "threads": 1,
        "output_dir": str(tmp_path / "runs"),
    }


@pytest.fixture
def fast_profile():
    return dict(FAST_PROFILE)
