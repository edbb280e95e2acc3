"""Self-verification of the invariant suite at pseudo-random exterior points."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..curvature import (
    GRAPH_MIN_RATIO,
    eotvos_assemble,
    eotvos_rotated,
    gauss_curvature_general,
    gauss_curvature_graph,
    mean_curvature,
    meusnier_k1,
    plumbline_curvature_global,
)
from ..ellipsoid import EllipsoidParams
from ..harmonic import CartesianPoint, HarmonicCoord, from_cartesian, to_cartesian
from ..numdiff import FDConfig, HESSIAN_CONFIG, fd_gradient, fd_hessian
from ..oracles import meridian_radius, prime_vertical_radius, somigliana
from ..potential import potential
from ..tensors import field_jet
from .geodetic import geodetic_to_cartesian

DEFAULT_TOLERANCES = {
    "trace_laplace": 1e-10,
    "local_offdiag_zero": 1e-10,
    "graph_vs_general": 1e-10,
    "plumbline_cross_frame": 1e-10,
    "eotvos_assembly": 1e-9,
    "eotvos_assembly_zeros": 1e-12,
    "gauss_from_local": 1e-10,
    "fd_gradient": 1e-7,
    "fd_hessian": 1e-5,
    "surface_somigliana": 1e-9,
    "surface_curvature": 1e-8,
}

SURFACE_LATITUDES_DEG = tuple(range(0, 91, 5))


@dataclass
class CheckResult:
    name: str
    tolerance: float
    worst: float = 0.0
    evaluated: int = 0
    failures: list[tuple[float, float, float]] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.evaluated == 0:
            return "SKIPPED"
        return "PASS" if not self.failures else "FAIL"

    def record(self, error: float, p: Sequence[float]) -> None:
        self.evaluated += 1
        if not error <= self.worst:
            self.worst = error
        if not error <= self.tolerance:
            self.failures.append(tuple(float(c) for c in p))


def random_points(params: EllipsoidParams, seed: int, count: int) -> list[CartesianPoint]:
    """Exterior points with u/b in [1, 3], |beta| <= 85 deg, any longitude."""
    rng = np.random.default_rng(seed)
    u = params.b * rng.uniform(1.0, 3.0, count)
    beta = np.radians(rng.uniform(-85.0, 85.0, count))
    lam = rng.uniform(-math.pi, math.pi, count)
    return [to_cartesian(params, HarmonicCoord(*c)) for c in zip(u, beta, lam)]


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def _point_checks(params: EllipsoidParams, p: CartesianPoint, results: dict[str, CheckResult]) -> None:
    w2 = 2.0 * params.omega**2
    jet = field_jet(params, p)
    hnorm = float(np.max(np.abs(jet.hess)))
    g = jet.gamma_mag

    results["trace_laplace"].record(abs(jet.trace - w2) / w2, p)

    rot = eotvos_rotated(jet, p)
    results["local_offdiag_zero"].record(max(abs(rot[3]), abs(rot[4])) / hnorm, p)

    if abs(jet.gamma[2]) > GRAPH_MIN_RATIO * g:
        results["graph_vs_general"].record(_rel(gauss_curvature_graph(jet), gauss_curvature_general(jet)), p)

    k_global = plumbline_curvature_global(jet)
    k_local = abs(rot[5]) / g
    results["plumbline_cross_frame"].record(_rel(k_global, k_local), p)

    eot = eotvos_assemble(jet, p, params.omega)
    assembled = eot.packed
    worst = max(_rel(assembled[i], rot[i]) for i in (0, 1, 2, 5))
    results["eotvos_assembly"].record(worst, p)
    results["eotvos_assembly_zeros"].record(max(abs(assembled[i] - rot[i]) for i in (3, 4)), p)

    results["gauss_from_local"].record(_rel(gauss_curvature_general(jet), rot[0] * rot[1] / g**2), p)

    def U_cart(x):
        hc = from_cartesian(params, CartesianPoint(*x))
        return potential(params, hc.u, hc.beta)

    fd_g = fd_gradient(U_cart, p, FDConfig())
    results["fd_gradient"].record(float(np.linalg.norm(fd_g - jet.gamma)) / g, p)
    fd_h = fd_hessian(U_cart, p, HESSIAN_CONFIG)
    results["fd_hessian"].record(float(np.max(np.abs(fd_h - jet.hess_matrix))) / hnorm, p)


def _surface_checks(params: EllipsoidParams, results: dict[str, CheckResult]) -> None:
    for deg in SURFACE_LATITUDES_DEG:
        lat = math.radians(deg)
        p = geodetic_to_cartesian(params, lat, 0.0, 0.0)
        jet = field_jet(params, p)
        results["surface_somigliana"].record(_rel(jet.gamma_mag, somigliana(params, lat)), p)
        M, N = meridian_radius(params, lat), prime_vertical_radius(params, lat)
        eot = eotvos_assemble(jet, p, params.omega)
        K = gauss_curvature_general(jet)
        errs = [_rel(K, 1.0 / (M * N)), _rel(abs(mean_curvature(eot)), 1.0 / M + 1.0 / N)]
        if deg != 90:
            errs.append(_rel(meusnier_k1(jet, p), 1.0 / N))
        results["surface_curvature"].record(max(errs), p)


def run_verification(
    params: EllipsoidParams,
    points: Sequence[CartesianPoint],
    tolerances: dict[str, float] | None = None,
) -> list[CheckResult]:
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    results = {name: CheckResult(name, tol[name]) for name in DEFAULT_TOLERANCES}
    for p in points:
        _point_checks(params, p, results)
    _surface_checks(params, results)
    return list(results.values())


def format_report(results: Sequence[CheckResult], npoints: int) -> str:
    lines = [f"verification over {npoints} point(s)"]
    for r in results:
        lines.append(
            f"{r.status:7s} {r.name:24s} worst={r.worst:.3e} tol={r.tolerance:.1e} n={r.evaluated}"
        )
        for p in r.failures:
            lines.append(f"        failing point X={p[0]:.17g} Y={p[1]:.17g} Z={p[2]:.17g}")
    ok = all(r.status != "FAIL" for r in results)
    lines.append("RESULT " + ("PASS" if ok else "FAIL"))
    return "\n".join(lines) + "\n"


def all_passed(results: Sequence[CheckResult]) -> bool:
    return all(r.status != "FAIL" for r in results)
