import math

import numpy as np
import pytest

from normalfield.errors import AxisError, DegenerateFieldError, DomainError
from normalfield.harmonic import CartesianPoint, HarmonicCoord, from_cartesian, to_cartesian
from normalfield.oracles import somigliana
from normalfield.tensors import (
    FieldJet2,
    LocalFrame,
    field_jet,
    field_jet_meridian,
    local_frame,
    phi_N,
    rotate_hessian,
)

from conftest import rel, surface_point


def test_equator_gravity(params):
    jet = field_jet(params, CartesianPoint(params.a, 0.0, 0.0))
    assert jet.gamma_mag == pytest.approx(9.7803267715, abs=5e-11)
    assert np.allclose(jet.gamma / jet.gamma_mag, (-1, 0, 0), atol=1e-15)


def test_pole_gravity(params):
    jet = field_jet(params, CartesianPoint(0.0, 0.0, params.b))
    assert jet.gamma_mag == pytest.approx(9.8321863685, abs=5e-11)
    assert np.allclose(jet.gamma / jet.gamma_mag, (0, 0, -1), atol=1e-15)
    south = field_jet(params, CartesianPoint(0.0, 0.0, -params.b))
    assert np.allclose(south.gamma / south.gamma_mag, (0, 0, 1), atol=1e-15)


@pytest.mark.parametrize("ratio", [1.0, 1.5, 3.0])
def test_gamma_z_zero_on_equator(params, ratio):
    for lam in (0.0, 1.0, -2.5):
        p = to_cartesian(params, HarmonicCoord(ratio * params.b, 0.0, lam))
        assert field_jet(params, p).gamma[2] == 0.0


def test_surface_somigliana_19_latitudes(params):
    for deg in range(0, 91, 5):
        jet = field_jet(params, surface_point(params, deg, 17.0))
        assert rel(jet.gamma_mag, somigliana(params, math.radians(deg))) <= 1e-9


def test_jet_invariants(params, sweep_points):
    for p in sweep_points:
        jet = field_jet(params, p)
        assert jet.gamma_mag == pytest.approx(np.linalg.norm(jet.gamma), rel=1e-15)
        assert jet.trace == pytest.approx(2 * params.omega**2, rel=1e-10)
        assert np.array_equal(jet.hess_matrix, jet.hess_matrix.T)


def test_meridian_path_agrees_with_6x6(params, sweep_points):
    for p in sweep_points:
        hc = from_cartesian(params, p)
        a, b = field_jet(params, p), field_jet_meridian(params, hc)
        assert np.linalg.norm(a.gamma - b.gamma) <= 1e-14 * a.gamma_mag
        assert np.max(np.abs(a.hess - b.hess)) <= 1e-13 * np.max(np.abs(a.hess))


def test_near_pole_continuity(params):
    # just inside and just beyond the 89.99 deg switch
    inside = to_cartesian(params, HarmonicCoord(1.2 * params.b, math.radians(89.98), 0.4))
    beyond = to_cartesian(params, HarmonicCoord(1.2 * params.b, math.radians(89.995), 0.4))
    for p in (inside, beyond):
        jet = field_jet(params, p)
        ref = field_jet_meridian(params, from_cartesian(params, p))
        assert jet.trace == pytest.approx(2 * params.omega**2, rel=1e-10)
        assert np.max(np.abs(jet.hess - ref.hess)) <= 1e-12 * np.max(np.abs(ref.hess))


def test_outside_focal_disk_required(params):
    with pytest.raises(DomainError):
        field_jet(params, CartesianPoint(1000.0, 0.0, 0.0))


def test_phi_n(params):
    assert phi_N(field_jet(params, CartesianPoint(params.a, 0, 0))) == 0.0
    p = surface_point(params, 45.0)
    assert phi_N(field_jet(params, p)) == pytest.approx(math.pi / 4, abs=1e-10)
    for q in [surface_point(params, 33.0, 10.0), to_cartesian(params, HarmonicCoord(2 * params.b, 0.6, -1))]:
        mirror = CartesianPoint(q[0], q[1], -q[2])
        assert phi_N(field_jet(params, mirror)) == pytest.approx(-phi_N(field_jet(params, q)), abs=1e-15)


def test_phi_n_equals_geodetic_latitude_on_surface(params):
    for deg in range(-85, 86, 10):
        assert phi_N(field_jet(params, surface_point(params, deg, 40.0))) == pytest.approx(math.radians(deg), abs=1e-10)


def test_degenerate_gravity():
    jet = FieldJet2(0.0, np.zeros(3), np.zeros(6))
    with pytest.raises(DegenerateFieldError):
        phi_N(jet)
    with pytest.raises(DegenerateFieldError):
        local_frame(jet, CartesianPoint(1.0, 0.0, 0.0))


def test_local_frame_examples(params):
    a = params.a
    p = CartesianPoint(a, 0.0, 0.0)
    f = local_frame(field_jet(params, p), p)
    assert np.allclose(f.up, (1, 0, 0), atol=1e-15)
    assert np.allclose(f.east, (0, 1, 0), atol=1e-15)
    assert np.allclose(f.north, (0, 0, 1), atol=1e-15)
    p = CartesianPoint(0.0, a, 0.0)
    f = local_frame(field_jet(params, p), p)
    assert np.allclose(f.up, (0, 1, 0), atol=1e-15)
    assert np.allclose(f.east, (-1, 0, 0), atol=1e-15)
    assert np.allclose(f.north, (0, 0, 1), atol=1e-15)


def test_local_frame_orthonormal(params, sweep_points):
    for p in sweep_points:
        jet = field_jet(params, p)
        R = local_frame(jet, p).rotation
        assert np.allclose(R @ R.T, np.eye(3), rtol=0, atol=1e-13)
        assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-13)
        assert R[2] @ jet.gamma == pytest.approx(-jet.gamma_mag, rel=1e-13)


def test_local_frame_on_axis(params):
    p = CartesianPoint(0.0, 0.0, params.b)
    with pytest.raises(AxisError):
        local_frame(field_jet(params, p), p)


def test_rotate_identity_and_trace(params, sweep_points):
    jet = field_jet(params, sweep_points[0])
    assert np.allclose(rotate_hessian(jet, LocalFrame(np.eye(3))), jet.hess, rtol=0, atol=0)
    rng = np.random.default_rng(3)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    local = rotate_hessian(jet, LocalFrame(Q))
    assert local[0] + local[1] + local[2] == pytest.approx(jet.trace, rel=1e-13)


def test_local_offdiagonals_vanish(params, sweep_points):
    for p in sweep_points:
        jet = field_jet(params, p)
        local = rotate_hessian(jet, local_frame(jet, p))
        hn = np.max(np.abs(jet.hess))
        assert abs(local[3]) <= 1e-10 * hn and abs(local[4]) <= 1e-10 * hn
        assert local[0] + local[1] + local[2] == pytest.approx(jet.trace, rel=1e-13)


def test_lambda_invariance_of_scalars(params):
    for beta in (-1.0, 0.3, 1.2):
        ref = None
        for lam in (0.0, 0.5, 2.0, -3.0):
            p = to_cartesian(params, HarmonicCoord(1.4 * params.b, beta, lam))
            jet = field_jet(params, p)
            vals = np.concatenate([[jet.gamma_mag, phi_N(jet)], rotate_hessian(jet, local_frame(jet, p))[[0, 1, 2, 5]]])
            if ref is None:
                ref = vals
            else:
                assert np.allclose(vals, ref, rtol=1e-12, atol=0)
