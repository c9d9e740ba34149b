import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from pulsar_green import specfun as sf
from pulsar_green.errors import DomainError, PoleError


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize("x", [0.013, 0.25, 0.5, 1.0, 2.25, 7.5, 33.3, 171.2, -0.25, -1.25, -3.7, -10.5])
def test_ln_gamma_against_mpmath(x):
    lg, sign = sf.ln_gamma(x)
    exact = mpmath.gamma(x)
    assert sign == (1 if exact > 0 else -1)
    assert abs(lg - float(mpmath.log(abs(exact)))) <= 1e-14 * max(1.0, abs(lg))


def test_ln_gamma_trivial_values():
    assert sf.ln_gamma(1.0) == (pytest.approx(0.0, abs=1e-15), 1)
    assert sf.ln_gamma(0.5)[0] == pytest.approx(0.5723649429247001, rel=1e-14)
    assert sf.gamma(0.75) * sf.gamma(2.25) == pytest.approx(5.0 / 16.0 * math.pi * math.sqrt(2.0), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_poles_raise(x):
    with pytest.raises(PoleError):
        sf.ln_gamma(x)
    with pytest.raises(PoleError):
        sf.digamma(x)
    assert sf.rgamma(x) == 0.0


@given(st.floats(min_value=-2.99, max_value=2.99).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_gamma_reflection(x):
    assert sf.gamma(x) * sf.gamma(1.0 - x) == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-12)


@given(st.floats(min_value=0.1, max_value=10.0))
def test_digamma_recurrence(x):
    assert sf.digamma(x + 1.0) - sf.digamma(x) == pytest.approx(1.0 / x, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("x", [1.0, 2.0, 2.25, 0.1172, 6.5, 12.0, -0.3, -4.75])
def test_digamma_against_mpmath(x):
    assert rel(sf.digamma(x), float(mpmath.digamma(x))) <= 1e-13


def test_digamma_known_values():
    assert sf.digamma(1.0) == pytest.approx(-sf.EULER_GAMMA, rel=1e-15)
    assert sf.digamma(2.0) == pytest.approx(1.0 - sf.EULER_GAMMA, rel=1e-15)


@pytest.mark.parametrize("a,n,expected", [(2.25, 0, 1.0), (2.25, 1, 2.25), (-1.0, 2, 0.0), (0.5, 3, 0.5 * 1.5 * 2.5)])
def test_pochhammer(a, n, expected):
    assert sf.pochhammer(a, n) == expected


def test_hyp2f1_trivial():
    assert sf.hyp2f1(0.3, 1.7, 2.25, 0.0) == 1.0
    for y in (0.1, 0.5, 0.9, 1.0):
        assert sf.hyp2f1(-1.0, 3.25, 2.25, y) == pytest.approx(1.0 - 13.0 / 9.0 * y, rel=1e-15, abs=1e-16)


@pytest.mark.parametrize("a,b,c,y", [
    (0.1172, 2.1328, 2.25, 0.3),
    (-2.6, 4.85, 2.25, 0.45),
    (1.3, -0.7, -0.25, 0.2),
    (5.5, 3.2, 1.0, 0.5),
])
def test_hyp2f1_against_mpmath(a, b, c, y):
    assert rel(sf.hyp2f1(a, b, c, y), float(mpmath.hyp2f1(a, b, c, y))) <= 1e-13


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.0, max_value=0.5),
)
def test_hyp2f1_symmetric(a, b, y):
    assert sf.hyp2f1(a, b, 2.25, y) == sf.hyp2f1(b, a, 2.25, y)


def test_hyp2f1_domain():
    with pytest.raises(DomainError):
        sf.hyp2f1(0.3, 0.4, 2.25, 0.7)
    with pytest.raises(PoleError):
        sf.hyp2f1(0.3, 0.4, -2.0, 0.1)


@pytest.mark.parametrize("a,b,y", [(1.0, 1.25, 0.9), (0.3, 1.95, 0.6), (-1.7, 3.95, 0.99), (-0.5, 2.75, 0.5)])
def test_hyp2f1_logcase_against_mpmath(a, b, y):
    assert rel(sf.hyp2f1_logcase(a, b, y), float(mpmath.hyp2f1(a, b, a + b, y))) <= 1e-12


@given(st.floats(min_value=-4.0, max_value=4.0).filter(lambda a: abs(a - round(a)) > 1e-3))
def test_branch_continuity_at_switch(a):
    b = 2.25 - a
    lo = sf.hyp2f1(a, b, 2.25, sf.Y_SWITCH)
    hi = sf.hyp2f1_logcase(a, b, sf.Y_SWITCH)
    assert abs(lo - hi) <= 1e-10 * abs(lo) + 1e-14


def test_logcase_divergence_rate():
    a, b = 0.4, 1.85
    weight = sf.gamma(a + b) / (sf.gamma(a) * sf.gamma(b))
    vals = [sf.hyp2f1_logcase(a, b, 1.0 - 10.0 ** -k) + weight * math.log(10.0 ** -k) for k in range(3, 12)]
    assert np.ptp(vals) < 0.01


def test_logcase_poles():
    with pytest.raises(PoleError):
        sf.hyp2f1_logcase(-2.0, 4.25, 0.7)


def test_gauss_at_one():
    assert sf.gauss_at_one(0.0, 1.3, 2.25) == pytest.approx(1.0, rel=1e-15)
    expected = sf.gamma(2.25) * sf.gamma(1.5) / (sf.gamma(2.0) * sf.gamma(1.75))
    assert sf.gauss_at_one(0.25, 0.5, 2.25) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(DomainError):
        sf.gauss_at_one(1.0, 1.25, 2.25)


def jacobi_oracle(n, y):
    return float(mpmath.jacobi(n, 1.25, 0, 1 - 2 * mpmath.mpf(y)))


@pytest.mark.parametrize("n", [0, 1, 2, 4, 5, 11, 30, 31, 120, 499])
@pytest.mark.parametrize("y", [0.0, 0.13, 0.5, 0.87, 1.0])
def test_jacobi_against_mpmath(n, y):
    exact = jacobi_oracle(n, y)
    scale = math.exp(math.lgamma(n + 2.25) - math.lgamma(n + 1) - math.lgamma(2.25))
    assert abs(sf.jacobi_p(n, y) - exact) <= 1e-12 * scale


def test_jacobi_hand_values():
    assert sf.jacobi_p(1, 0.5) == pytest.approx(0.625, rel=1e-15)
    assert sf.jacobi_p(3, 0.0) == pytest.approx(sf.pochhammer(2.25, 3) / 6.0, rel=1e-14)


def test_jacobi_table_matches_scalar():
    y = np.array([0.05, 0.4, 0.95])
    table = sf.jacobi_table(40, y)
    for n in (0, 1, 7, 39):
        np.testing.assert_allclose(table[n], sf.jacobi_p(n, y), rtol=1e-13)


@pytest.mark.parametrize("n", range(9))
def test_jacobi_orthogonality(n):
    norm = float(mpmath.quad(lambda t: t ** 1.25 * mpmath.mpf(sf.jacobi_p(n, float(t))) ** 2, [0, 0.5, 1]))
    assert norm == pytest.approx(1.0 / (2 * n + 2.25), rel=1e-10)
    if n:
        cross = float(mpmath.quad(lambda t: t ** 1.25 * sf.jacobi_p(n, float(t)) * sf.jacobi_p(n - 1, float(t)), [0, 0.5, 1]))
        assert abs(cross) <= 1e-10
