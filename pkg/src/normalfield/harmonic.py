"""Ellipsoidal-harmonic coordinates (u, beta, lambda) and derivative transport.

The coordinate map is

    X = sqrt(u^2 + E^2) cos(beta) cos(lambda)
    Y = sqrt(u^2 + E^2) cos(beta) sin(lambda)
    Z = u sin(beta)

First derivatives are moved to Cartesian axes with the inverse Jacobian of
this orthogonal system. Second derivatives are obtained by assembling the
6x6 chain-rule system

    f_kl - sum_m d2x_m/dq_k dq_l * f_m = sum_ij J_ik J_jl f_ij

(unknowns f_XX, f_YY, f_ZZ, f_XY, f_XZ, f_YZ) and solving it directly.

Symmetric 3x3 tensors are stored as 6-vectors in the order
(XX, YY, ZZ, XY, XZ, YZ); harmonic second partials use the matching order
(uu, bb, ll, ub, ul, bl).
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .ellipsoid import EllipsoidParams
from .errors import DomainError, IllConditionedTransformError, PoleSingularityError

# Index pairs for the 6-entry packing of a symmetric 3x3 tensor.
SYM_PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))

MAX_CONDITION = 1e12


class CartesianPoint(NamedTuple):
    X: float
    Y: float
    Z: float


class HarmonicCoord(NamedTuple):
    u: float
    beta: float
    lam: float


def sym_to_matrix(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return np.array(
        [
            [h[0], h[3], h[4]],
            [h[3], h[1], h[5]],
            [h[4], h[5], h[2]],
        ]
    )


def matrix_to_sym(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    # average the off-diagonal pairs so that symmetry is exact after packing
    return np.array(
        [
            m[0, 0],
            m[1, 1],
            m[2, 2],
            0.5 * (m[0, 1] + m[1, 0]),
            0.5 * (m[0, 2] + m[2, 0]),
            0.5 * (m[1, 2] + m[2, 1]),
        ]
    )


def to_cartesian(params: EllipsoidParams, hc: HarmonicCoord) -> CartesianPoint:
    u, beta, lam = hc
    if not u >= 0:
        raise DomainError(f"u must be non-negative, got {u}")
    v = math.hypot(u, params.E)
    rho = v * math.cos(beta)
    return CartesianPoint(rho * math.cos(lam), rho * math.sin(lam), u * math.sin(beta))


def from_cartesian(params: EllipsoidParams, p: CartesianPoint) -> HarmonicCoord:
    """Invert the coordinate map.

    u^2 is the positive root of u^4 + u^2 (E^2 - r^2) - E^2 Z^2 = 0. On the
    rotation axis beta = +-pi/2 and lambda = 0 by convention.
    """
    X, Y, Z = (float(c) for c in p)
    if not all(math.isfinite(c) for c in (X, Y, Z)):
        raise DomainError(f"non-finite point {p}")
    E2 = params.E * params.E
    rho = math.hypot(X, Y)
    r2 = rho * rho + Z * Z
    d = r2 - E2
    disc = math.hypot(d, 2.0 * params.E * Z)
    if d >= 0:
        u2 = 0.5 * (d + disc)
    else:
        # rationalized root, free of cancellation when r < E
        denom = disc - d
        u2 = 2.0 * E2 * Z * Z / denom if denom > 0 else 0.0
    u = math.sqrt(u2)
    if u == 0.0 and rho < params.E:
        raise DomainError(f"point {p} lies inside the focal disk")
    v = math.sqrt(u2 + E2)
    beta = math.atan2(Z * v, u * rho)
    lam = math.atan2(Y, X) if rho > 0 else 0.0
    if lam == -math.pi:
        lam = math.pi
    return HarmonicCoord(u, beta, lam)


def jacobian(params: EllipsoidParams, hc: HarmonicCoord) -> np.ndarray:
    """J[i, k] = d x_i / d q_k with x = (X, Y, Z), q = (u, beta, lambda)."""
    u, beta, lam = hc
    v = math.hypot(u, params.E)
    cb, sb = math.cos(beta), math.sin(beta)
    cl, sl = math.cos(lam), math.sin(lam)
    return np.array(
        [
            [u / v * cb * cl, -v * sb * cl, -v * cb * sl],
            [u / v * cb * sl, -v * sb * sl, v * cb * cl],
            [sb, u * cb, 0.0],
        ]
    )


def second_derivatives(params: EllipsoidParams, hc: HarmonicCoord) -> np.ndarray:
    """D[m, s] = d2 x_m / dq_k dq_l for the pair s in (uu, bb, ll, ub, ul, bl)."""
    u, beta, lam = hc
    E = params.E
    v = math.hypot(u, E)
    cb, sb = math.cos(beta), math.sin(beta)
    cl, sl = math.cos(lam), math.sin(lam)
    rho_uu = E * E / v**3 * cb
    rho_bb = -v * cb
    rho_ub = -u / v * sb
    # X = rho(u,b) cos(l), Y = rho(u,b) sin(l)
    return np.array(
        [
            [rho_uu * cl, rho_bb * cl, -v * cb * cl, rho_ub * cl, -u / v * cb * sl, v * sb * sl],
            [rho_uu * sl, rho_bb * sl, -v * cb * sl, rho_ub * sl, u / v * cb * cl, -v * sb * cl],
            [0.0, -u * sb, 0.0, cb, 0.0, 0.0],
        ]
    )


def _check_pole(hc: HarmonicCoord, grad_u) -> None:
    if abs(abs(hc.beta) - math.pi / 2) < 1e-15 and grad_u[2] != 0.0:
        raise PoleSingularityError("longitude derivative is undefined at the pole")


def grad_to_cartesian(params: EllipsoidParams, hc: HarmonicCoord, grad_u) -> np.ndarray:
    """Map (f_u, f_beta, f_lambda) to (f_X, f_Y, f_Z).

    Uses the orthogonality of the system: grad f = sum_k f_k (dx/dq_k) / h_k^2.
    A zero lambda-derivative contributes exactly zero, so lambda-independent
    fields transport without the 1/cos(beta) singularity.
    """
    grad_u = np.asarray(grad_u, dtype=float)
    _check_pole(hc, grad_u)
    u, beta, lam = hc
    E = params.E
    v2 = u * u + E * E
    v = math.sqrt(v2)
    cb, sb = math.cos(beta), math.sin(beta)
    cl, sl = math.cos(lam), math.sin(lam)
    w = u * u + E * E * sb * sb
    fu, fb, fl = grad_u
    out = np.array(
        [
            (u * v * cb * fu - v * sb * fb) * cl / w,
            (u * v * cb * fu - v * sb * fb) * sl / w,
            (v2 * sb * fu + u * cb * fb) / w,
        ]
    )
    if fl != 0.0:
        out[0] -= sl / (v * cb) * fl
        out[1] += cl / (v * cb) * fl
    return out


def second_order_system(params: EllipsoidParams, hc: HarmonicCoord) -> np.ndarray:
    """The 6x6 matrix mapping packed Cartesian second partials to J^T H J.

    Row s = (k, l) holds the coefficients of H_XX .. H_YZ in
    sum_ij J_ik J_jl H_ij.
    """
    J = jacobian(params, hc)
    M = np.empty((6, 6))
    for s, (k, l) in enumerate(SYM_PAIRS):
        for t, (i, j) in enumerate(SYM_PAIRS):
            if i == j:
                M[s, t] = J[i, k] * J[i, l]
            else:
                M[s, t] = J[i, k] * J[j, l] + J[j, k] * J[i, l]
    return M


def _row_scales(params: EllipsoidParams, hc: HarmonicCoord) -> np.ndarray:
    # angles carry a length factor v; scaling rows by 1/(L_k L_l) makes the
    # system dimensionless while keeping the pole degeneracy visible
    v = math.hypot(hc.u, params.E)
    L = (1.0, v, v)
    return np.array([1.0 / (L[k] * L[l]) for k, l in SYM_PAIRS])


def hessian_to_harmonic(params: EllipsoidParams, hc: HarmonicCoord, grad_X, hess_X) -> np.ndarray:
    """Forward direction: packed Cartesian Hessian to harmonic second partials."""
    D = second_derivatives(params, hc)
    return second_order_system(params, hc) @ np.asarray(hess_X, dtype=float) + np.asarray(grad_X) @ D


def hessian_to_cartesian(params: EllipsoidParams, hc: HarmonicCoord, grad_u, hess_u) -> np.ndarray:
    """Solve the chain-rule system for the packed Cartesian Hessian.

    Parameters
    ----------
    grad_u : (f_u, f_beta, f_lambda)
    hess_u : (f_uu, f_bb, f_ll, f_ub, f_ul, f_bl)

    Raises
    ------
    IllConditionedTransformError
        If the row-scaled system has condition number above 1e12, which
        happens within a few micro-radians of the poles.
    """
    grad_u = np.asarray(grad_u, dtype=float)
    hess_u = np.asarray(hess_u, dtype=float)
    grad_X = grad_to_cartesian(params, hc, grad_u)
    rhs = hess_u - grad_X @ second_derivatives(params, hc)
    scale = _row_scales(params, hc)
    M = second_order_system(params, hc) * scale[:, None]
    cond = np.linalg.cond(M)
    if not cond <= MAX_CONDITION:
        raise IllConditionedTransformError(
            f"second-order transform condition number {cond:.3g} exceeds {MAX_CONDITION:g} at beta={hc.beta}"
        )
    return np.linalg.solve(M, rhs * scale)
