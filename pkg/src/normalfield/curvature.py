"""Curvatures of the normal equipotential surface and plumbline, and the
reconstruction of the local second-derivative (Eotvos) matrix from them.

With gamma = grad U the horizontal second derivatives of U are negative
(U_xx = -|gamma| k1), the Gauss curvature is U_xx U_yy / |gamma|^2 and the
mean-curvature quantity J = -(U_xx + U_yy)/|gamma| equals k1 + k2 > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AxisError, GraphDegenerateError
from .harmonic import CartesianPoint
from .tensors import (
    FieldJet2,
    _require_gravity,
    axial_local_hessian,
    is_on_axis,
    local_frame,
    parallel_radius,
    phi_N,
    rotate_hessian,
)

GRAPH_MIN_RATIO = 0.1


@dataclass(frozen=True)
class EotvosMatrix:
    """Local-frame second derivatives; U_xy = U_xz = 0 by the field's symmetry."""

    U_xx: float
    U_yy: float
    U_zz: float
    U_yz: float
    gamma_mag: float

    @property
    def packed(self) -> np.ndarray:
        """(xx, yy, zz, xy, xz, yz), the layout used by :func:`rotate_hessian`."""
        return np.array([self.U_xx, self.U_yy, self.U_zz, 0.0, 0.0, self.U_yz])

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.U_xx, 0.0, 0.0],
                [0.0, self.U_yy, self.U_yz],
                [0.0, self.U_yz, self.U_zz],
            ]
        )


@dataclass(frozen=True)
class CurvatureSummary:
    K_G: float
    J: float
    k1: float
    k_pl: float
    k_pl_signed: float
    phi_N: float
    R_p: float


def gauss_curvature_graph(jet: FieldJet2) -> float:
    """Gauss curvature from the surface written as a graph Z(X, Y).

    Only valid while the normal is far from horizontal; the denominator
    (U_Z)^2 |gamma|^4 vanishes on the equator.
    """
    _require_gravity(jet)
    UX, UY, UZ = jet.gamma
    UXX, UYY, UZZ, UXY, UXZ, UYZ = jet.hess
    if not abs(UZ) > GRAPH_MIN_RATIO * jet.gamma_mag:
        raise GraphDegenerateError(
            f"|U_Z| = {abs(UZ):.3g} is not above {GRAPH_MIN_RATIO}|gamma|; use gauss_curvature_general"
        )
    first = -UXX * UZ**2 + 2.0 * UXZ * UX * UZ - UZZ * UX**2
    second = -UYY * UZ**2 + 2.0 * UYZ * UY * UZ - UZZ * UY**2
    mixed = UZ * (UY * UXZ + UX * UYZ - UZ * UXY) - UZZ * UX * UY
    return (first * second - mixed**2) / (UZ**2 * jet.gamma_mag**4)


def gauss_curvature_general(jet: FieldJet2) -> float:
    """Axis-free Gauss curvature gamma^T adj(H) gamma / |gamma|^4."""
    _require_gravity(jet)
    g = jet.gamma
    xx, yy, zz, xy, xz, yz = jet.hess
    adj = np.array(
        [
            [yy * zz - yz * yz, xz * yz - xy * zz, xy * yz - xz * yy],
            [xz * yz - xy * zz, xx * zz - xz * xz, xy * xz - xx * yz],
            [xy * yz - xz * yy, xy * xz - xx * yz, xx * yy - xy * xy],
        ]
    )
    return float(g @ adj @ g) / jet.gamma_mag**4


def meusnier_k1(jet: FieldJet2, p: CartesianPoint) -> float:
    """East-west principal curvature cos(phi_N) / R_p (parallel circle via Meusnier)."""
    if is_on_axis(p):
        raise AxisError(f"parallel-circle radius is zero at {tuple(p)}")
    return math.cos(phi_N(jet)) / parallel_radius(p)


def plumbline_curvature_vector(jet: FieldJet2) -> np.ndarray:
    """Curvature vector ((gamma x H gamma) x gamma) / |gamma|^4 of the field line."""
    _require_gravity(jet)
    g = jet.gamma
    c = np.cross(g, jet.hess_matrix @ g)
    return np.cross(c, g) / jet.gamma_mag**4


def plumbline_curvature_global(jet: FieldJet2) -> float:
    """|gamma x H gamma| / |gamma|^3; the squared components are the three
    bracketed terms of the global-frame plumbline formula."""
    _require_gravity(jet)
    g = jet.gamma
    return float(np.linalg.norm(np.cross(g, jet.hess_matrix @ g))) / jet.gamma_mag**3


def plumbline_curvature_signed(jet: FieldJet2, p: CartesianPoint) -> float:
    """North component of the curvature vector; equals -U_yz/|gamma|. Zero on the axis."""
    if is_on_axis(p):
        return 0.0
    return float(plumbline_curvature_vector(jet) @ local_frame(jet, p).north)


def eotvos_assemble(jet: FieldJet2, p: CartesianPoint, omega: float) -> EotvosMatrix:
    """Rebuild the local matrix from |gamma|, K_G, k_pl and the Meusnier U_xx.

    On the rotation axis the point is an umbilic: U_xx = U_yy = -|gamma| sqrt(K_G).
    """
    g = jet.gamma_mag
    K = gauss_curvature_general(jet)
    if is_on_axis(p):
        Uxx = -g * math.sqrt(K)
        Uyy = Uxx
        Uyz = 0.0
    else:
        Uxx = -g * meusnier_k1(jet, p)
        Uyy = g * g * K / Uxx
        Uyz = -g * plumbline_curvature_signed(jet, p)
    return EotvosMatrix(Uxx, Uyy, 2.0 * omega**2 - Uxx - Uyy, Uyz, g)


def eotvos_rotated(jet: FieldJet2, p: CartesianPoint) -> np.ndarray:
    """Local Hessian obtained by rotating the Cartesian Hessian (packed)."""
    if is_on_axis(p):
        return axial_local_hessian(jet)
    return rotate_hessian(jet, local_frame(jet, p))


def mean_curvature(eotvos: EotvosMatrix) -> float:
    """J = -(U_xx + U_yy) / |gamma|."""
    return -(eotvos.U_xx + eotvos.U_yy) / eotvos.gamma_mag


def summarize(jet: FieldJet2, p: CartesianPoint, omega: float) -> tuple[EotvosMatrix, CurvatureSummary]:
    eot = eotvos_assemble(jet, p, omega)
    K = gauss_curvature_general(jet)
    if is_on_axis(p):
        k1 = math.sqrt(K)
    else:
        k1 = meusnier_k1(jet, p)
    summary = CurvatureSummary(
        K_G=K,
        J=mean_curvature(eot),
        k1=k1,
        k_pl=plumbline_curvature_global(jet),
        k_pl_signed=-eot.U_yz / eot.gamma_mag,
        phi_N=phi_N(jet),
        R_p=parallel_radius(p),
    )
    return eot, summary
