import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normalfield.curvature import eotvos_rotated, gauss_curvature_general
from normalfield.disturbance import (
    PointMass,
    PointMassModel,
    actual_field_jet,
    buried_mass,
    curvature_relation,
    disturbing_jet,
    yy_reconstruction_residual,
    load_model,
    make_model,
    parse_model,
    relation_lhs,
    same_frame_rhs,
)
from normalfield.errors import AxisError, DomainError, ParseError, SingularityError
from normalfield.harmonic import CartesianPoint
from normalfield.numdiff import fd_gradient
from normalfield.tensors import field_jet, local_frame, rotate_hessian

from conftest import rel, surface_point


def test_single_mass_hessian_on_axis_line():
    mu, d = 5e8, 2e5
    model = PointMassModel((PointMass(mu, CartesianPoint(0.0, 0.0, 0.0)),))
    jet = disturbing_jet(model, CartesianPoint(d, 0.0, 0.0))
    assert jet.U == pytest.approx(mu / d, rel=1e-15)
    assert np.allclose(jet.gamma, [-mu / d**2, 0, 0], rtol=1e-15)
    assert np.allclose(jet.hess, [2 * mu / d**3, -mu / d**3, -mu / d**3, 0, 0, 0], rtol=1e-15)


def test_disturbing_jet_traceless_and_fd(params):
    rng = np.random.default_rng(5)
    model = make_model(params, [(1e9, (1e6, 2e6, -5e5)), (3e8, (-2e6, 0.0, 3e6))])
    for _ in range(20):
        p = rng.normal(size=3) * 8e6
        jet = disturbing_jet(model, CartesianPoint(*p))
        assert abs(jet.trace) <= 1e-12 * np.max(np.abs(jet.hess))
        T = lambda x: disturbing_jet(model, CartesianPoint(*x)).U
        assert np.linalg.norm(fd_gradient(T, p) - jet.gamma) <= 1e-7 * jet.gamma_mag


def test_zero_model_is_normal_field(params, sweep_points):
    p = sweep_points[3]
    a, b = actual_field_jet(params, PointMassModel(), p), field_jet(params, p)
    assert a.U == b.U and np.array_equal(a.gamma, b.gamma) and np.array_equal(a.hess, b.hess)


def test_actual_field_adds(params, sweep_points):
    model = make_model(params, [(4e8, (1e6, 1e6, 1e6))])
    for p in sweep_points[:10]:
        W, U, T = actual_field_jet(params, model, p), field_jet(params, p), disturbing_jet(model, p)
        assert W.trace == pytest.approx(2 * params.omega**2, rel=1e-9)
        assert np.linalg.norm(W.gamma - U.gamma) == pytest.approx(T.gamma_mag, rel=1e-9)


def test_yy_reconstruction_residual(params):
    p = surface_point(params, 45.0, 30.0)
    assert abs(yy_reconstruction_residual(params, PointMassModel(), p)) <= 1e-12 * field_jet(params, p).gamma_mag / params.a
    small = buried_mass(params, p)
    assert abs(yy_reconstruction_residual(params, small, p)) <= 1e-12 * field_jet(params, p).gamma_mag / params.a


def test_yy_reconstruction_longitude_covariance(params):
    ref = None
    for lon in (0.0, 40.0, 200.0):
        p = surface_point(params, 50.0, lon)
        val = yy_reconstruction_residual(params, PointMassModel(), p)
        ref = val if ref is None else ref
        assert abs(val - ref) <= 1e-20


def test_relation_zero_mass(params):
    p = surface_point(params, 45.0)
    r = curvature_relation(params, PointMassModel(), p)
    assert r.residual == 0.0 and r.deflection == 0.0


def test_relation_quadratic_scaling(params):
    p = surface_point(params, 45.0)
    base = buried_mass(params, p)
    res = [abs(curvature_relation(params, base.scaled(s), p).residual) for s in (1, 2, 4)]
    assert 3.5 <= res[1] / res[0] <= 4.5
    assert 3.5 <= res[2] / res[1] <= 4.5
    d = curvature_relation(params, base, p).deflection
    assert 1e-6 < d < 1e-5


def test_relation_lhs_printed_determinants():
    # |gamma|^2 K + det T + (T_xx U_yy + T_yy U_xx)
    assert relation_lhs(-2.0, -3.0, 0.5, 0.1, 0.25, 6.0) == pytest.approx(6.0 + (0.125 - 0.01) + (0.5 * -3.0 + 0.25 * -2.0))


sym = st.floats(min_value=-1e-6, max_value=1e-6, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(st.tuples(sym, sym, sym, sym, sym, sym))
def test_same_frame_identity(T):
    U = np.array([-1.53e-6, -1.55e-6, 3.08e-6, 0.0, 0.0, 8e-9])
    gK = U[0] * U[1]
    lhs = relation_lhs(U[0], U[1], T[0], T[3], T[1], gK)
    rhs = same_frame_rhs(U, np.array(T))
    scale = max(abs(gK), abs(T[0] * T[1]), abs(T[3]) ** 2, abs(T[0] * U[1]), abs(T[1] * U[0]))
    assert abs(lhs - rhs) <= 1e-13 * scale + 1e-300


def test_same_frame_identity_with_field(params):
    p = surface_point(params, 45.0, 10.0)
    U = field_jet(params, p)
    frame = local_frame(U, p)
    model = buried_mass(params, p, mu=1e9)
    T_loc = rotate_hessian(disturbing_jet(model, p), frame)
    U_loc = eotvos_rotated(U, p)
    gK = U.gamma_mag**2 * gauss_curvature_general(U)
    lhs = relation_lhs(U_loc[0], U_loc[1], T_loc[0], T_loc[3], T_loc[1], gK)
    assert rel(lhs, same_frame_rhs(U_loc, T_loc)) <= 1e-13


def test_parse_model(params):
    m = parse_model(params, "# header\n1e6 0 0 0  # centre\n\n2e6 1000 -2000 3000\n")
    assert len(m.masses) == 2 and m.masses[1].position == (1000.0, -2000.0, 3000.0)
    with pytest.raises(ParseError, match=":2:"):
        parse_model(params, "1e6 0 0 0\n1e6 0 0\n")
    with pytest.raises(ParseError, match=":1:"):
        parse_model(params, "1e6 0 0 abc\n")
    with pytest.raises(ParseError, match=":1:"):
        parse_model(params, "-5 0 0 0\n")
    with pytest.raises(ParseError, match=":1:"):
        parse_model(params, "1e6 1e8 0 0\n")


def test_load_bundled_default(params):
    from importlib.resources import files

    path = files("normalfield") / "data" / "pointmass_default.txt"
    m = load_model(params, str(path))
    assert len(m.masses) == 1 and m.masses[0].mu == 1e6


def test_make_model_validation(params):
    with pytest.raises(DomainError):
        make_model(params, [(0.0, (0, 0, 0))])
    with pytest.raises(DomainError):
        make_model(params, [(math.nan, (0, 0, 0))])
    with pytest.raises(DomainError):
        make_model(params, [(1.0, (params.a, 0, 0))])


def test_singularity(params):
    model = make_model(params, [(1.0, (1e5, 0, 0))])
    with pytest.raises(SingularityError):
        disturbing_jet(model, CartesianPoint(1e5, 0.0, 0.0))


def test_on_axis_rejected(params):
    pole = CartesianPoint(0.0, 0.0, params.b)
    with pytest.raises(AxisError):
        curvature_relation(params, PointMassModel(), pole)
    with pytest.raises(AxisError):
        yy_reconstruction_residual(params, PointMassModel(), pole)
