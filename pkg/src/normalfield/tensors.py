"""Global-frame field jets of the normal potential and the local astronomical frame.

Sign convention: the gravity vector is the gradient of the potential,
gamma = grad U, so it points inward and the local "up" axis is -gamma/|gamma|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ellipsoid import EllipsoidParams
from .errors import AxisError, DegenerateFieldError
from .harmonic import (
    CartesianPoint,
    HarmonicCoord,
    from_cartesian,
    grad_to_cartesian,
    hessian_to_cartesian,
    matrix_to_sym,
    sym_to_matrix,
)
from .potential import potential_jet

POLE_THRESHOLD = math.radians(89.99)
AXIS_RELATIVE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FieldJet2:
    """Potential value, gradient and packed Hessian at a point (global frame)."""

    U: float
    gamma: np.ndarray
    hess: np.ndarray
    gamma_mag: float = field(init=False)

    def __post_init__(self):
        gamma = np.asarray(self.gamma, dtype=float)
        hess = np.asarray(self.hess, dtype=float)
        gamma.setflags(write=False)
        hess.setflags(write=False)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "hess", hess)
        object.__setattr__(self, "gamma_mag", float(np.linalg.norm(gamma)))

    @property
    def hess_matrix(self) -> np.ndarray:
        return sym_to_matrix(self.hess)

    @property
    def trace(self) -> float:
        return float(self.hess[0] + self.hess[1] + self.hess[2])

    def __add__(self, other: "FieldJet2") -> "FieldJet2":
        return FieldJet2(self.U + other.U, self.gamma + other.gamma, self.hess + other.hess)


@dataclass(frozen=True)
class LocalFrame:
    """Rows are the east, north and up unit vectors in global components."""

    rotation: np.ndarray

    @property
    def east(self) -> np.ndarray:
        return self.rotation[0]

    @property
    def north(self) -> np.ndarray:
        return self.rotation[1]

    @property
    def up(self) -> np.ndarray:
        return self.rotation[2]


def parallel_radius(p: CartesianPoint) -> float:
    return math.hypot(p[0], p[1])


def is_on_axis(p: CartesianPoint) -> bool:
    """True when the point is on the rotation axis to within ~1e-10 of its radius."""
    return parallel_radius(p) <= AXIS_RELATIVE_TOLERANCE * math.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2)


def _jet_transform(params: EllipsoidParams, hc: HarmonicCoord) -> FieldJet2:
    pj = potential_jet(params, hc.u, hc.beta)
    gamma = grad_to_cartesian(params, hc, pj.grad)
    hess = hessian_to_cartesian(params, hc, pj.grad, pj.hess)
    return FieldJet2(pj.U, gamma, hess)


def field_jet_meridian(params: EllipsoidParams, hc: HarmonicCoord) -> FieldJet2:
    """Jet via the 2-D meridian-plane chain rule, regular up to and on the axis.

    The axisymmetric field is differentiated in cylindrical (rho, Z); the
    azimuthal curvature term f_rho/rho is evaluated in a form free of the
    0/0 at the poles. Valid at any beta.
    """
    u, beta, lam = hc
    E = params.E
    pj = potential_jet(params, u, beta)
    v2 = u * u + E * E
    v = math.sqrt(v2)
    cb, sb = math.cos(beta), math.sin(beta)
    w = u * u + E * E * sb * sb

    # rows: (rho, Z); columns: (u, beta)
    Jm = np.array([[u * cb / v, -v * sb], [sb, u * cb]])
    f_rho = (u * cb * pj.U_u - sb * pj.U_beta) * v / w
    f_Z = (v2 * sb * pj.U_u + u * cb * pj.U_beta) / w
    f_rho_over_rho = (u * pj.U_u - sb * sb * pj.beta_factor) / w

    rho_uu, rho_bb, rho_ub = E * E * cb / v**3, -v * cb, -u * sb / v
    Z_uu, Z_bb, Z_ub = 0.0, -u * sb, cb
    Hq = np.array(
        [
            [pj.U_uu - f_rho * rho_uu - f_Z * Z_uu, pj.U_ubeta - f_rho * rho_ub - f_Z * Z_ub],
            [pj.U_ubeta - f_rho * rho_ub - f_Z * Z_ub, pj.U_betabeta - f_rho * rho_bb - f_Z * Z_bb],
        ]
    )
    Jinv = np.linalg.inv(Jm)
    F = Jinv.T @ Hq @ Jinv

    cl, sl = math.cos(lam), math.sin(lam)
    e_rho = np.array([cl, sl, 0.0])
    e_lam = np.array([-sl, cl, 0.0])
    e_z = np.array([0.0, 0.0, 1.0])
    H = (
        F[0, 0] * np.outer(e_rho, e_rho)
        + F[1, 1] * np.outer(e_z, e_z)
        + F[0, 1] * (np.outer(e_rho, e_z) + np.outer(e_z, e_rho))
        + f_rho_over_rho * np.outer(e_lam, e_lam)
    )
    return FieldJet2(pj.U, f_rho * e_rho + f_Z * e_z, matrix_to_sym(H))


def field_jet(params: EllipsoidParams, p: CartesianPoint) -> FieldJet2:
    """Normal potential, gravity vector and Cartesian Hessian at ``p``.

    Points with |beta| above 89.99 degrees are routed through
    :func:`field_jet_meridian`, since the 6x6 transform degenerates at the
    poles while the field itself is regular there.
    """
    hc = from_cartesian(params, p)
    if abs(hc.beta) > POLE_THRESHOLD:
        return field_jet_meridian(params, hc)
    return _jet_transform(params, hc)


def _require_gravity(jet: FieldJet2) -> None:
    if not jet.gamma_mag > 0:
        raise DegenerateFieldError("gravity vector is zero")


def phi_N(jet: FieldJet2) -> float:
    """Angle between the gravity vector and the equatorial plane, in radians.

    Sign chosen so that the result equals geodetic latitude on the level
    ellipsoid (positive in the northern hemisphere, where gamma_Z < 0).
    Computed as atan2, which equals arcsin(-gamma_Z/|gamma|).
    """
    _require_gravity(jet)
    g = jet.gamma
    return math.atan2(-g[2], math.hypot(g[0], g[1]))


def local_frame(jet: FieldJet2, p: CartesianPoint) -> LocalFrame:
    """East/north/up frame at ``p``; ``up`` is opposite to gravity."""
    _require_gravity(jet)
    if is_on_axis(p):
        raise AxisError(f"east direction undefined on the rotation axis at {tuple(p)}")
    up = -jet.gamma / jet.gamma_mag
    east = np.array([-up[1], up[0], 0.0])
    n = np.linalg.norm(east)
    if n == 0:
        raise AxisError(f"gravity is parallel to the rotation axis at {tuple(p)}")
    east /= n
    north = np.cross(up, east)
    return LocalFrame(np.vstack([east, north, up]))


def rotate_hessian(jet: FieldJet2, frame: LocalFrame) -> np.ndarray:
    """Packed local second partials (xx, yy, zz, xy, xz, yz) = R H R^T."""
    R = frame.rotation
    return matrix_to_sym(R @ jet.hess_matrix @ R.T)


def axial_local_hessian(jet: FieldJet2) -> np.ndarray:
    """Local second partials on the rotation axis.

    The Hessian there is invariant under rotations about Z, so every choice of
    horizontal axes yields the same diagonal matrix.
    """
    h = jet.hess
    horiz = 0.5 * (h[0] + h[1])
    return np.array([horiz, horiz, h[2], 0.0, 0.0, 0.0])
