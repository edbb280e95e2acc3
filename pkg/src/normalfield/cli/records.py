"""Assembly of point and grid records from library calls."""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from ..curvature import eotvos_rotated, summarize
from ..ellipsoid import EllipsoidParams
from ..errors import DomainError
from ..harmonic import CartesianPoint, from_cartesian
from ..tensors import field_jet
from .geodetic import cartesian_to_geodetic, geodetic_to_cartesian

EOTVOS_UNIT = 1e-9

QUANTITIES = ("gamma", "eotvos", "K_G", "J", "k1", "k_pl", "phi_N")
QUANTITY_COLUMNS = {
    "gamma": ("gamma",),
    "eotvos": ("U_xx", "U_yy", "U_zz", "U_yz"),
    "K_G": ("K_G",),
    "J": ("J",),
    "k1": ("k1",),
    "k_pl": ("k_pl",),
    "phi_N": ("phi_N",),
}


def gradient_scale(units: str) -> float:
    if units == "si":
        return 1.0
    if units == "eotvos":
        return 1.0 / EOTVOS_UNIT
    raise ValueError(f"unknown units {units!r}")


def require_exterior(params: EllipsoidParams, p: CartesianPoint) -> None:
    hc = from_cartesian(params, p)
    if hc.u < params.b * (1.0 - 1e-12):
        raise DomainError(f"point {tuple(p)} is inside the reference ellipsoid (u = {hc.u:.6f} m < b)")


def point_record(params: EllipsoidParams, p: CartesianPoint, units: str = "si") -> dict[str, float]:
    """Every quantity computed at one exterior point, in a fixed key order."""
    require_exterior(params, p)
    scale = gradient_scale(units)
    hc = from_cartesian(params, p)
    lat, lon, h = cartesian_to_geodetic(params, p)
    jet = field_jet(params, p)
    eot, s = summarize(jet, p, params.omega)
    rot = eotvos_rotated(jet, p)
    discrepancy = float(np.max(np.abs(eot.packed - rot)))

    rec: dict[str, float] = {
        "X": p[0],
        "Y": p[1],
        "Z": p[2],
        "lat_deg": math.degrees(lat),
        "lon_deg": math.degrees(lon),
        "h_m": h,
        "u": hc.u,
        "beta": hc.beta,
        "lambda": hc.lam,
        "U": jet.U,
        "gamma_X": jet.gamma[0],
        "gamma_Y": jet.gamma[1],
        "gamma_Z": jet.gamma[2],
        "gamma_mag": jet.gamma_mag,
        "U_xx": eot.U_xx * scale,
        "U_yy": eot.U_yy * scale,
        "U_zz": eot.U_zz * scale,
        "U_yz": eot.U_yz * scale,
    }
    for name, value in zip(("xx", "yy", "zz", "xy", "xz", "yz"), rot):
        rec[f"rot_U_{name}"] = value * scale
    rec["eotvos_max_discrepancy"] = discrepancy * scale
    rec.update(
        K_G=s.K_G,
        J=s.J,
        k1=s.k1,
        k2=s.K_G / s.k1,
        k_pl=s.k_pl,
        k_pl_signed=s.k_pl_signed,
        phi_N=s.phi_N,
        R_p=s.R_p,
    )
    return {k: float(v) for k, v in rec.items()}


def grid_columns(quantities: Iterable[str]) -> list[str]:
    cols = ["lat_deg", "lon_deg", "h_m"]
    for q in QUANTITIES:
        if q in quantities:
            cols.extend(QUANTITY_COLUMNS[q])
    return cols


def grid_row(params: EllipsoidParams, lat_deg: float, lon_deg: float, h: float, quantities, units: str = "si") -> list[float]:
    p = geodetic_to_cartesian(params, math.radians(lat_deg), math.radians(lon_deg), h)
    require_exterior(params, p)
    scale = gradient_scale(units)
    jet = field_jet(params, p)
    eot, s = summarize(jet, p, params.omega)
    row = [lat_deg, lon_deg, h]
    values = {
        "gamma": (jet.gamma_mag,),
        "eotvos": (eot.U_xx * scale, eot.U_yy * scale, eot.U_zz * scale, eot.U_yz * scale),
        "K_G": (s.K_G,),
        "J": (s.J,),
        "k1": (s.k1,),
        "k_pl": (s.k_pl,),
        "phi_N": (s.phi_N,),
    }
    for q in QUANTITIES:
        if q in quantities:
            row.extend(values[q])
    return [float(v) for v in row]


def fmt(value: float) -> str:
    """17 significant digits (round-trips doubles); negative zero prints as 0."""
    return format(float(value) + 0.0, ".17g")
