import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from schurkit.curves import (
    CurvatureProfile,
    Jump,
    constant_curvature,
    reconstruct_plane,
    reconstruct_space_frenet,
    reconstruct_space_profile,
    sinusoidal_curvature,
)
from schurkit.sphere import reconstruct_spherical

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


# Shared fixtures are session-scoped: reconstruction at the default step is
# the expensive part and every module compares against the same handful of
# reference curves.

@pytest.fixture(scope="session")
def circle_pi():
    """Unit-circle arc of length pi (the convex plane reference curve)."""
    return reconstruct_plane(CurvatureProfile(math.pi, constant_curvature(1.0)))


@pytest.fixture(scope="session")
def line_pi():
    """Straight space segment of length pi."""
    return reconstruct_space_frenet(
        constant_curvature(0.0), constant_curvature(0.0), math.pi
    )


@pytest.fixture(scope="session")
def helix_pi():
    """Circular helix with curvature 1/2 and torsion 1/2 (a = b = 1)."""
    return reconstruct_space_frenet(
        constant_curvature(0.5), constant_curvature(0.5), math.pi
    )


@pytest.fixture(scope="session")
def wobbly_plane_pi():
    """Convex plane curve with non-constant curvature (asymmetric fixtures)."""
    return reconstruct_plane(
        CurvatureProfile(math.pi, sinusoidal_curvature(1.0, 0.3, 2.0))
    )


@pytest.fixture(scope="session")
def corner_pair():
    """Right-angle corner curve and a space companion with a half-size jump."""
    c = reconstruct_plane(
        CurvatureProfile(2.0, constant_curvature(0.0), (Jump(1.0, math.pi / 2),))
    )
    ct = reconstruct_space_profile(
        CurvatureProfile(
            2.0, constant_curvature(0.0),
            (Jump(1.0, math.pi / 4, (0.0, 1.0, 0.0)),), convex=False,
        ),
        constant_curvature(0.0),
    )
    return c, ct


@pytest.fixture(scope="session")
def sphere_small_great():
    """Small circle (kg = 1) and great-circle arc of equal length pi/2."""
    small = reconstruct_spherical(constant_curvature(1.0), (), math.pi / 2)
    great = reconstruct_spherical(constant_curvature(0.0), (), math.pi / 2)
    return small, great


@pytest.fixture(scope="session")
def sphere_polygon_pair():
    """Geodesic polygon arms with dominating jump angles (arm-lemma case)."""
    arm = reconstruct_spherical(constant_curvature(0.0), ((0.7, 0.6), (1.4, 0.5)), 2.0)
    arm_t = reconstruct_spherical(constant_curvature(0.0), ((0.7, 0.3), (1.4, 0.2)), 2.0)
    return arm, arm_t


def random_rotation(rng) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
