import math

import numpy as np
import pytest

from normalfield.cli.geodetic import geodetic_to_cartesian
from normalfield.ellipsoid import grs80
from normalfield.harmonic import HarmonicCoord, to_cartesian


@pytest.fixture(scope="session")
def params():
    return grs80()


@pytest.fixture(scope="session")
def sweep_points(params):
    """50 seeded exterior points, u/b in [1, 3], |beta| <= 85 deg."""
    rng = np.random.default_rng(20240611)
    u = params.b * rng.uniform(1.0, 3.0, 50)
    beta = np.radians(rng.uniform(-85.0, 85.0, 50))
    lam = rng.uniform(-math.pi, math.pi, 50)
    return [to_cartesian(params, HarmonicCoord(*c)) for c in zip(u, beta, lam)]


def surface_point(params, lat_deg, lon_deg=0.0, h=0.0):
    return geodetic_to_cartesian(params, math.radians(lat_deg), math.radians(lon_deg), h)


def rel(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0
