"""Closed-form reference values on the level ellipsoid.

These are independent of the harmonic-coordinate machinery and serve only
as checks: Somigliana's formula for normal gravity and the meridian /
prime-vertical radii of curvature.
"""
from __future__ import annotations

import math

from .ellipsoid import EllipsoidParams


def equator_pole_gravity(params: EllipsoidParams) -> tuple[float, float]:
    """Normal gravity at the equator and at the pole (m/s^2)."""
    a, b, E, GM = params.a, params.b, params.E, params.GM
    m = params.omega**2 * a * a * b / GM
    ep = E / b
    x = b / E
    # q0 and q0' in closed form at u = b
    q0 = 0.5 * ((1.0 + 3.0 * x * x) * math.atan(1.0 / x) - 3.0 * x)
    q0p = 3.0 * (1.0 + x * x) * (1.0 - x * math.atan(1.0 / x)) - 1.0
    gamma_e = GM / (a * b) * (1.0 - m - m / 6.0 * ep * q0p / q0)
    gamma_p = GM / (a * a) * (1.0 + m / 3.0 * ep * q0p / q0)
    return gamma_e, gamma_p


def somigliana(params: EllipsoidParams, lat: float) -> float:
    """Normal gravity on the ellipsoid at geodetic latitude ``lat`` (radians)."""
    gamma_e, gamma_p = equator_pole_gravity(params)
    a, b = params.a, params.b
    c2, s2 = math.cos(lat) ** 2, math.sin(lat) ** 2
    return (a * gamma_e * c2 + b * gamma_p * s2) / math.sqrt(a * a * c2 + b * b * s2)


def meridian_radius(params: EllipsoidParams, lat: float) -> float:
    """M = a (1 - e^2) / (1 - e^2 sin^2 lat)^(3/2)."""
    w = 1.0 - params.e2 * math.sin(lat) ** 2
    return params.a * (1.0 - params.e2) / w**1.5


def prime_vertical_radius(params: EllipsoidParams, lat: float) -> float:
    """N = a / (1 - e^2 sin^2 lat)^(1/2)."""
    return params.a / math.sqrt(1.0 - params.e2 * math.sin(lat) ** 2)
