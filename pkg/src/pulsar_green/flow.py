"""Dimensional flow model of the accretion column.

Position x is measured from the sonic point toward the stellar surface,
which sits at x = x_st.  The spectral code works in the dimensionless
coordinate ``y = (7/3)^(x/x_st - 1)``, in which the flow velocity is
linear, ``v/v_c = (7/4)(1 - y)``.  All quantities are cgs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SPEED_OF_LIGHT = 2.99792458e10
GRAVITATIONAL_CONSTANT = 6.6743e-8
_LN_SEVEN_THIRDS = math.log(7.0 / 3.0)


@dataclass(frozen=True)
class ColumnGeometry:
    r0: float
    sigma_par: float
    sigma_perp: float
    J: float
    M_star: float
    R_star: float

    def __post_init__(self):
        for name in ("r0", "sigma_par", "sigma_perp", "J", "M_star", "R_star"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be finite and positive, got {value}")

    @classmethod
    def from_pairs(cls, pairs):
        """Build from ``key=value`` strings, e.g. the CLI ``--geometry`` list."""
        fields = {}
        for item in pairs:
            key, sep, value = item.partition("=")
            if not sep:
                raise DomainError(f"expected key=value, got {item!r}")
            fields[key.strip()] = float(value)
        try:
            return cls(**fields)
        except TypeError as exc:
            raise DomainError(str(exc)) from None


@dataclass(frozen=True)
class FlowState:
    y: float
    v_over_vc: float

    @classmethod
    def at(cls, y):
        return cls(float(y), velocity(y))


def sonic_constants(geom):
    """Return (v_c, x_st): sonic-point speed and sonic-point-to-surface distance."""
    v_c = (4.0 / 7.0) * math.sqrt(2.0 * GRAVITATIONAL_CONSTANT * geom.M_star / geom.R_star)
    x_st = geom.r0 / (2.0 * math.sqrt(3.0)) * math.sqrt(geom.sigma_perp / geom.sigma_par) * _LN_SEVEN_THIRDS
    return v_c, x_st


def y_of_x(geom, x):
    _, x_st = sonic_constants(geom)
    x = np.asarray(x, dtype=float)
    if np.any(x > x_st):
        raise DomainError("x must not exceed x_st (the stellar surface)")
    y = np.exp(_LN_SEVEN_THIRDS * (x / x_st - 1.0))
    y = np.where(x == x_st, 1.0, y)
    return float(y) if y.ndim == 0 else y


def x_of_y(geom, y):
    _, x_st = sonic_constants(geom)
    y = np.asarray(y, dtype=float)
    if np.any((y <= 0.0) | (y > 1.0)):
        raise DomainError("y must lie in (0, 1]")
    x = x_st * (1.0 + np.log(y) / _LN_SEVEN_THIRDS)
    return float(x) if x.ndim == 0 else x


def velocity(y):
    """v / v_c = (7/4)(1 - y)."""
    y = np.asarray(y, dtype=float)
    if np.any((y < 0.0) | (y > 1.0)):
        raise DomainError("y must lie in [0, 1]")
    v = 1.75 * (1.0 - y)
    return float(v) if v.ndim == 0 else v


def escape_time(geom, y):
    """Mean time for a photon to diffuse out through the column walls at y."""
    v_c, _ = sonic_constants(geom)
    n_e = geom.J / (v_c * velocity(y))
    return geom.r0 ** 2 * n_e * geom.sigma_perp / SPEED_OF_LIGHT


def satisfying_flux(r0, sigma_par, sigma_perp):
    """The J for which the dynamical constraint holds exactly."""
    return math.sqrt(0.75) * SPEED_OF_LIGHT / (r0 * math.sqrt(sigma_perp * sigma_par))


def check_dynamical_constraint(geom):
    """|r0^2 J^2 sigma_perp sigma_par - (3/4) c^2| / ((3/4) c^2)."""
    target = 0.75 * SPEED_OF_LIGHT ** 2
    lhs = geom.r0 ** 2 * geom.J ** 2 * geom.sigma_perp * geom.sigma_par
    return abs(lhs - target) / target
