import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pulsar_green import flow
from pulsar_green.errors import DomainError

R0 = 1e5
SIGMA_T = 6.6524587e-25


def geometry(J=None, M=1.4 * 1.989e33, sigma_perp=SIGMA_T * 3.0, sigma_par=SIGMA_T * 1e-3):
    if J is None:
        J = flow.satisfying_flux(R0, sigma_par, sigma_perp)
    return flow.ColumnGeometry(R0, sigma_par, sigma_perp, J, M, 1e6)


def test_y_of_x_anchor_points():
    geom = geometry()
    _, x_st = flow.sonic_constants(geom)
    assert flow.y_of_x(geom, x_st) == 1.0
    assert flow.y_of_x(geom, 0.0) == pytest.approx(3.0 / 7.0, rel=1e-15)
    assert flow.y_of_x(geom, -200 * x_st) < 1e-70
    with pytest.raises(DomainError):
        flow.y_of_x(geom, 1.01 * x_st)


def test_x_of_y_anchor_points():
    geom = geometry()
    _, x_st = flow.sonic_constants(geom)
    assert flow.x_of_y(geom, 1.0) == pytest.approx(x_st, rel=1e-15)
    assert flow.x_of_y(geom, 3.0 / 7.0) == pytest.approx(0.0, abs=1e-12 * x_st)
    for bad in (0.0, 1.5, -0.1):
        with pytest.raises(DomainError):
            flow.x_of_y(geom, bad)


@given(st.floats(min_value=-10.0, max_value=1.0))
def test_round_trip(frac):
    geom = geometry()
    _, x_st = flow.sonic_constants(geom)
    x = frac * x_st
    assert flow.x_of_y(geom, flow.y_of_x(geom, x)) == pytest.approx(x, rel=1e-12, abs=1e-12 * x_st)


def test_monotonicity():
    geom = geometry()
    _, x_st = flow.sonic_constants(geom)
    ys = flow.y_of_x(geom, np.linspace(-10 * x_st, x_st, 200))
    assert np.all(np.diff(ys) > 0)
    assert np.all(np.diff(flow.velocity(ys)) < 0)


def test_sonic_constants():
    geom = geometry(sigma_perp=SIGMA_T, sigma_par=SIGMA_T)
    v_c, x_st = flow.sonic_constants(geom)
    assert x_st == pytest.approx(R0 * math.log(7 / 3) / (2 * math.sqrt(3)), rel=1e-15)
    assert v_c == pytest.approx(4 / 7 * math.sqrt(2 * 6.6743e-8 * 1.4 * 1.989e33 / 1e6), rel=1e-15)
    heavy, _ = flow.sonic_constants(geometry(M=2 * 1.4 * 1.989e33))
    assert heavy / flow.sonic_constants(geometry())[0] == pytest.approx(math.sqrt(2), rel=1e-15)


def test_velocity():
    assert flow.velocity(1.0) == 0.0
    assert flow.velocity(0.0) == 1.75
    assert flow.velocity(0.9) == pytest.approx(0.175, rel=1e-14)
    state = flow.FlowState.at(0.4)
    assert state.v_over_vc == pytest.approx(1.75 * 0.6)
    geom = geometry()
    _, x_st = flow.sonic_constants(geom)
    assert flow.velocity(flow.y_of_x(geom, x_st)) == 0.0


def test_dynamical_constraint():
    geom = geometry()
    assert flow.check_dynamical_constraint(geom) == pytest.approx(0.0, abs=1e-14)
    doubled = geometry(J=2 * geom.J)
    assert flow.check_dynamical_constraint(doubled) == pytest.approx(3.0, rel=1e-13)


def test_escape_time_scales_with_density():
    geom = geometry()
    assert flow.escape_time(geom, 0.9) / flow.escape_time(geom, 0.5) == pytest.approx(5.0, rel=1e-13)


def test_geometry_validation_and_pairs():
    with pytest.raises(DomainError):
        flow.ColumnGeometry(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    geom = flow.ColumnGeometry.from_pairs(["r0=1e5", "sigma_par=1e-27", "sigma_perp=2e-24", "J=3e29", "M_star=2.8e33", "R_star=1e6"])
    assert geom.sigma_perp == 2e-24
    with pytest.raises(DomainError):
        flow.ColumnGeometry.from_pairs(["r0"])
    with pytest.raises(DomainError):
        flow.ColumnGeometry.from_pairs(["r0=1", "mass=2"])
