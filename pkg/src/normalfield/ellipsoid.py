"""Reference-ellipsoid constants and the auxiliary function q(u).

q(u) is the Legendre function of the second kind that carries the
rotational flattening term of the normal potential:

    q(u) = 1/2 [(1 + 3 u^2/E^2) arctan(E/u) - 3 u/E]

The closed form suffers catastrophic cancellation once u >> E (already a
loss of five digits on the Earth's surface), so for E/u below
``SERIES_SWITCH`` all three q-family functions are summed from the
convergent odd power series in t = E/u instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DomainError, ParameterDomainError, ParseError

SERIES_SWITCH = 0.5
_SERIES_MAX_TERMS = 400

CONFIG_KEYS = ("a", "f_inv", "GM", "omega")


@dataclass(frozen=True)
class EllipsoidParams:
    """Defining and derived constants of a level ellipsoid (SI units)."""

    a: float
    f: float
    GM: float
    omega: float
    b: float
    E: float
    e2: float
    q0: float


def derive_params(a: float, f: float, GM: float, omega: float) -> EllipsoidParams:
    """Build an :class:`EllipsoidParams` from the four defining constants.

    Raises
    ------
    ParameterDomainError
        For non-finite values, ``a <= 0``, ``f`` outside (0, 1), ``GM <= 0``
        or ``omega < 0``. A sphere (``E == 0``) is rejected because every
        downstream formula divides by E.
    """
    values = {"a": a, "f": f, "GM": GM, "omega": omega}
    for name, value in values.items():
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ParameterDomainError(f"{name} must be a finite number, got {value!r}")
    if a <= 0:
        raise ParameterDomainError(f"a must be positive, got {a}")
    if not 0 < f < 1:
        raise ParameterDomainError(f"f must lie in (0, 1), got {f}")
    if GM <= 0:
        raise ParameterDomainError(f"GM must be positive, got {GM}")
    if omega < 0:
        raise ParameterDomainError(f"omega must be non-negative, got {omega}")

    a = float(a)
    f = float(f)
    b = a * (1.0 - f)
    # a^2 - b^2 = a^2 f (2 - f); avoids the cancellation of the direct difference
    e2 = f * (2.0 - f)
    E = a * math.sqrt(e2)
    if not (E > 0 and b > 0):
        raise ParameterDomainError("degenerate ellipsoid: linear eccentricity is zero")
    q0 = _q(E, b)
    if not q0 > 0:
        raise ParameterDomainError(f"q0 must be positive, got {q0}")
    return EllipsoidParams(a=a, f=f, GM=float(GM), omega=float(omega), b=b, E=E, e2=e2, q0=q0)


def _series_coeffs():
    # q = sum_{n>=1} c_n t^(2n+1),  c_n = (-1)^(n+1) 2n / ((2n+1)(2n+3))
    n = 1
    while True:
        yield n, (-1.0) ** (n + 1) * 2.0 * n / ((2 * n + 1) * (2 * n + 3))
        n += 1


def _q_series(t: float, order: int) -> float:
    """Sum of c_n * w_n * t^(2n+1) where w_n is the derivative weight for `order`."""
    t2 = t * t
    power = t * t2
    total = 0.0
    for n, c in _series_coeffs():
        k = 2 * n + 1
        if order == 0:
            weight = 1.0
        elif order == 1:
            weight = float(k)
        else:
            weight = float(k * (k + 1))
        term = c * weight * power
        total += term
        if abs(term) <= 1e-18 * abs(total) or n >= _SERIES_MAX_TERMS:
            break
        power *= t2
    return total


def _check_u(u: float) -> None:
    if not u > 0 or not math.isfinite(u):
        raise DomainError(f"u must be positive and finite, got {u}")


def _q(E: float, u: float) -> float:
    t = E / u
    if t < SERIES_SWITCH:
        return _q_series(t, 0)
    s = u / E
    return 0.5 * ((1.0 + 3.0 * s * s) * math.atan(t) - 3.0 * s)


def q_of_u(params: EllipsoidParams, u: float) -> float:
    """Evaluate q(u) (dimensionless, positive, decreasing)."""
    _check_u(u)
    return _q(params.E, u)


def dq_du(params: EllipsoidParams, u: float) -> float:
    """First derivative of q with respect to u, in 1/m."""
    _check_u(u)
    E = params.E
    t = E / u
    if t < SERIES_SWITCH:
        return -_q_series(t, 1) / u
    v2 = u * u + E * E
    return 3.0 * u * math.atan(t) / (E * E) - (2.0 * E * E + 3.0 * u * u) / (E * v2)


def d2q_du2(params: EllipsoidParams, u: float) -> float:
    """Second derivative of q with respect to u, in 1/m^2."""
    _check_u(u)
    E = params.E
    t = E / u
    if t < SERIES_SWITCH:
        return _q_series(t, 2) / (u * u)
    v2 = u * u + E * E
    return 3.0 * math.atan(t) / (E * E) - 3.0 * u / (E * v2) - 2.0 * u * E / (v2 * v2)


def parse_config(text: str, source: str = "<string>") -> EllipsoidParams:
    """Parse ``key = value`` lines with keys exactly ``a, f_inv, GM, omega``.

    Blank lines and ``#`` comments are ignored.
    """
    found: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in found:
            raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            found[key] = float(value)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: {key} is not a number: {value!r}") from None
    missing = [k for k in CONFIG_KEYS if k not in found]
    if missing:
        raise ParseError(f"{source}: missing keys {', '.join(missing)}")
    if found["f_inv"] <= 1 or not math.isfinite(found["f_inv"]):
        raise ParameterDomainError(f"{source}: f_inv must be finite and > 1, got {found['f_inv']}")
    return derive_params(found["a"], 1.0 / found["f_inv"], found["GM"], found["omega"])


def load_config(path: str | Path) -> EllipsoidParams:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), source=str(path))


def default_config_text() -> str:
    return resources.files("normalfield").joinpath("data/grs80.cfg").read_text(encoding="utf-8")


def grs80() -> EllipsoidParams:
    """The bundled default configuration (GRS80 defining constants)."""
    return parse_config(default_config_text(), source="grs80.cfg")
