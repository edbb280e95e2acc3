"""Normal potential of a rotating level ellipsoid and its analytic partials.

    U(u, beta) = GM/E arctan(E/u)
                 + 1/2 w^2 a^2 q(u)/q0 (sin^2 beta - 1/3)
                 + 1/2 w^2 (u^2 + E^2) cos^2 beta

U does not depend on longitude, so every lambda partial is zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ellipsoid import EllipsoidParams, d2q_du2, dq_du, q_of_u


@dataclass(frozen=True)
class PotentialJet:
    """U and its (u, beta) partials up to second order."""

    U: float
    U_u: float
    U_beta: float
    U_uu: float
    U_ubeta: float
    U_betabeta: float
    # U_beta / (sin(beta) cos(beta)); finite at the poles and the equator
    beta_factor: float

    @property
    def grad(self) -> np.ndarray:
        """(U_u, U_beta, U_lambda)."""
        return np.array([self.U_u, self.U_beta, 0.0])

    @property
    def hess(self) -> np.ndarray:
        """(U_uu, U_bb, U_ll, U_ub, U_ul, U_bl)."""
        return np.array([self.U_uu, self.U_betabeta, 0.0, self.U_ubeta, 0.0, 0.0])


def potential(params: EllipsoidParams, u: float, beta: float) -> float:
    q = q_of_u(params, u)
    E = params.E
    w2 = params.omega**2
    sb = math.sin(beta)
    cb = math.cos(beta)
    return (
        params.GM / E * math.atan(E / u)
        + 0.5 * w2 * params.a**2 * (q / params.q0) * (sb * sb - 1.0 / 3.0)
        + 0.5 * w2 * (u * u + E * E) * cb * cb
    )


def potential_jet(params: EllipsoidParams, u: float, beta: float) -> PotentialJet:
    q = q_of_u(params, u)
    q1 = dq_du(params, u)
    q2 = d2q_du2(params, u)
    E = params.E
    a2 = params.a**2
    w2 = params.omega**2
    v2 = u * u + E * E
    sb, cb = math.sin(beta), math.cos(beta)
    sb2, cb2 = sb * sb, cb * cb
    legendre = sb2 - 1.0 / 3.0

    U = params.GM / E * math.atan(E / u) + 0.5 * w2 * a2 * (q / params.q0) * legendre + 0.5 * w2 * v2 * cb2
    U_u = -params.GM / v2 + 0.5 * w2 * a2 * (q1 / params.q0) * legendre + w2 * u * cb2
    U_uu = 2.0 * params.GM * u / (v2 * v2) + 0.5 * w2 * a2 * (q2 / params.q0) * legendre + w2 * cb2

    # d/dbeta of (sin^2 - 1/3) and of cos^2 are +-sin(2 beta)
    beta_factor = w2 * (a2 * q / params.q0 - v2)
    U_beta = beta_factor * sb * cb
    U_betabeta = beta_factor * (cb2 - sb2)
    U_ubeta = w2 * (a2 * q1 / params.q0 - 2.0 * u) * sb * cb
    return PotentialJet(U, U_u, U_beta, U_uu, U_ubeta, U_betabeta, beta_factor)
