import math

import numpy as np
import pytest

from normalfield.ellipsoid import derive_params
from normalfield.errors import DomainError
from normalfield.potential import potential, potential_jet

import mp_oracle

MP = mp_oracle.constants(6378137.0, 298.257222101, 3.986005e14, 7.292115e-5)
FIELDS = ("U", "U_u", "U_beta", "U_uu", "U_ubeta", "U_betabeta")


def test_level_ellipsoid_value(params):
    # U0 = GM/E arctan(E/b) + w^2 a^2 / 3, evaluated at 50 digits
    U0 = MP["GM"] / MP["E"] * mp_oracle.mp.atan(MP["E"] / MP["b"]) + MP["omega"] ** 2 * MP["a"] ** 2 / 3
    assert float(U0) == pytest.approx(6.26368608e7, rel=1e-9)
    for deg in (0, 30, 60, 90):
        assert potential(params, params.b, math.radians(deg)) == pytest.approx(float(U0), rel=1e-9)


def test_level_ellipsoid_constancy(params):
    values = [potential(params, params.b, b) for b in np.linspace(-math.pi / 2, math.pi / 2, 181)]
    assert (max(values) - min(values)) / max(values) <= 1e-9


def test_no_rotation():
    p = derive_params(6378137.0, 1 / 298.257222101, 3.986005e14, 0.0)
    for u in (p.b, 2 * p.b):
        ref = p.GM / p.E * math.atan(p.E / u)
        for beta in (0.0, 0.5, 1.4):
            assert potential(p, u, beta) == pytest.approx(ref, rel=1e-15)


def test_far_field(params):
    u = 50 * params.b
    centrifugal = 0.5 * params.omega**2 * (u * u + params.E**2)
    grav = potential(params, u, 0.0) - centrifugal
    assert grav == pytest.approx(params.GM / u, rel=0.01)
    assert centrifugal > grav


def test_even_in_beta(params):
    for u in (params.b, 1.7 * params.b):
        for beta in (0.1, 0.8, 1.5):
            assert potential(params, u, beta) == potential(params, u, -beta)
            assert potential_jet(params, u, beta).U_beta == -potential_jet(params, u, -beta).U_beta


def test_symmetry_zeros(params):
    jet = potential_jet(params, 1.3 * params.b, 0.0)
    assert jet.U_beta == 0.0 and jet.U_ubeta == 0.0
    jet = potential_jet(params, 1.3 * params.b, math.pi / 2)
    assert abs(jet.U_beta) <= 1e-15 * abs(jet.beta_factor)


def _check_against_mp(params, u, beta, tol):
    jet = potential_jet(params, u, beta)
    ref = mp_oracle.partials(MP, u, beta)
    for name in FIELDS:
        got, want = getattr(jet, name), float(ref[name])
        # entries that vanish by symmetry are compared on the scale of their family
        scale = max(abs(want), 1e-9 * abs(float(ref["U"])) if name in ("U_beta", "U_betabeta") else abs(want))
        assert abs(got - want) <= tol * scale + 1e-30, name


def test_example_point(params):
    _check_against_mp(params, 1.1 * params.b, 0.7, 1e-7)


@pytest.mark.parametrize("ratio", np.linspace(1.0, 3.0, 10))
def test_grid_against_oracle(params, ratio):
    for beta in np.linspace(-1.4, 1.4, 10):
        _check_against_mp(params, ratio * params.b, beta, 1e-7)


@pytest.mark.parametrize("u", [0.0, -5.0])
def test_domain(params, u):
    with pytest.raises(DomainError):
        potential(params, u, 0.1)
    with pytest.raises(DomainError):
        potential_jet(params, u, 0.1)
