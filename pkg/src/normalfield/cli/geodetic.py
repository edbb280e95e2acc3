"""Geodetic latitude/longitude/height plumbing for CLI input and output."""
from __future__ import annotations

import math

from ..ellipsoid import EllipsoidParams
from ..harmonic import CartesianPoint


def geodetic_to_cartesian(params: EllipsoidParams, lat: float, lon: float, h: float) -> CartesianPoint:
    """Latitude and longitude in radians, ellipsoidal height in meters."""
    s = math.sin(lat)
    N = params.a / math.sqrt(1.0 - params.e2 * s * s)
    rho = (N + h) * math.cos(lat)
    return CartesianPoint(rho * math.cos(lon), rho * math.sin(lon), (N * (1.0 - params.e2) + h) * s)


def cartesian_to_geodetic(params: EllipsoidParams, p: CartesianPoint) -> tuple[float, float, float]:
    """Inverse of :func:`geodetic_to_cartesian` by fixed-point iteration on latitude."""
    X, Y, Z = p
    a, e2 = params.a, params.e2
    rho = math.hypot(X, Y)
    lon = math.atan2(Y, X) if rho > 0 else 0.0
    if rho == 0.0:
        lat = math.copysign(math.pi / 2, Z) if Z != 0 else 0.0
        return lat, lon, abs(Z) - params.b
    lat = math.atan2(Z, rho * (1.0 - e2))
    for _ in range(50):
        s = math.sin(lat)
        N = a / math.sqrt(1.0 - e2 * s * s)
        new = math.atan2(Z + e2 * N * s, rho)
        if abs(new - lat) < 1e-15:
            lat = new
            break
        lat = new
    s, c = math.sin(lat), math.cos(lat)
    N = a / math.sqrt(1.0 - e2 * s * s)
    # choose the better-conditioned height formula
    if abs(c) > 0.5:
        h = rho / c - N
    else:
        h = Z / s - N * (1.0 - e2)
    return lat, lon, h
