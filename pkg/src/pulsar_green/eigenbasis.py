"""Fundamental solutions of the separated spatial equation.

The homogeneous equation

    y(1-y) g'' + (1-5y)/4 g' + (lambda y + y - 1)/(4y) g = 0

has the solution ``phi1 = y F(a, b; 9/4; y)`` that vanishes upstream and
``phi2`` that stays finite at the stellar surface y = 1.  Here
``a = (9 - sqrt(17 + 16 lambda))/8`` and ``b = 9/4 - a``.

phi2 is carried as ``phi2 = K(lambda) * y * F(a, b; 1; 1-y)`` with
``K = Gamma(b) Gamma(1-a) / (sqrt(2) pi)``, which equals the combination
of phi1 and phi1* that cancels their logarithmic divergence.  K overflows
for lambda beyond a few thousand while every physical quantity only needs
ratios of phi2, so the eigenvalue code works with the scaled
``phi2_scaled = phi2 / K``.

Writing nu = -a, both F(-nu, nu+9/4; 9/4; y) and F(-nu, nu+9/4; 1; 1-y)
obey a three-term recurrence in nu (they are Jacobi functions of degree
nu).  Values at large lambda are obtained by running that recurrence
forward from nu0 = nu - floor(nu) in [0, 1), where the series are short
and well conditioned.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun as sf
from .errors import DomainError

C_PARAM = 2.25
LAMBDA_MIN = -17.0 / 16.0
_ALPHA = 1.25
_SQRT2_PI = math.sqrt(2.0) * math.pi
_GAMMA_C = math.gamma(C_PARAM)
_GAMMA_2MC = math.gamma(2.0 - C_PARAM)  # Gamma(-1/4)


@dataclass(frozen=True)
class SpectralParams:
    lam: float
    a: float
    b: float
    c: float = C_PARAM


def spectral_params(lam):
    lam = float(lam)
    if lam < LAMBDA_MIN:
        raise DomainError(f"lambda must be >= -17/16, got {lam}")
    root = math.sqrt(17.0 + 16.0 * lam)
    return SpectralParams(lam, (9.0 - root) / 8.0, (9.0 + root) / 8.0)


def _nu(lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < LAMBDA_MIN):
        raise DomainError("lambda must be >= -17/16")
    return (np.sqrt(17.0 + 16.0 * lam) - 9.0) / 8.0


def _check_y(y, upper_closed=False):
    y = np.asarray(y, dtype=float)
    hi_ok = (y <= 1.0) if upper_closed else (y < 1.0)
    if not np.all((y > 0.0) & hi_ok):
        raise DomainError("y must lie in (0, 1)" + ("]" if upper_closed else ")"))
    return y


def _split(mask, fn_true, fn_false, *arrays):
    """Evaluate fn_true where mask holds and fn_false elsewhere, on flattened subsets."""
    arrays = np.broadcast_arrays(mask, *arrays)
    mask, arrays = arrays[0], arrays[1:]
    out = np.empty(mask.shape)
    for sel, fn in ((mask, fn_true), (~mask, fn_false)):
        if np.any(sel):
            out[sel] = fn(*(arr[sel] for arr in arrays))
    return out


def _start_f(nu, y):
    """F(-nu, nu+9/4; 9/4; y) directly from the series (small |nu|)."""
    a = -nu
    b = C_PARAM + nu
    direct = (y <= sf.Y_SWITCH) | sf._is_nonpos_int(a)
    return _split(
        direct,
        lambda a_, b_, y_: sf._series_regular(a_, b_, C_PARAM, y_),
        sf._series_log,
        a, b, y,
    )


def _start_g_upstream(a, b, y):
    # phi2/(K y) from the phi1, phi1* combination; regular series only (y <= 1/2)
    f1 = sf._series_regular(a, b, C_PARAM, y)
    f1s = sf._series_regular(a - _ALPHA, b - _ALPHA, 2.0 - C_PARAM, y)
    w1 = _SQRT2_PI * sf._rgamma(1.0 - b) * sf._rgamma(1.0 - a) / _GAMMA_C
    w2 = _SQRT2_PI * sf._rgamma(a) * sf._rgamma(b) / _GAMMA_2MC
    return w1 * f1 - w2 * y ** (-1.25) * f1s


def _start_g(nu, y):
    """F(-nu, nu+9/4; 1; 1-y) for small |nu|."""
    a = -nu
    b = C_PARAM + nu
    downstream = (y > sf.Y_SWITCH) | sf._is_nonpos_int(a)
    return _split(
        downstream,
        lambda a_, b_, y_: sf._series_regular(a_, b_, 1.0, 1.0 - y_),
        _start_g_upstream,
        a, b, y,
    )


def _recurrence_coeffs(nu, y):
    x = 1.0 - 2.0 * y
    two = 2.0 * nu + _ALPHA
    mid = (two + 1.0) * ((two + 2.0) * two * x + _ALPHA * _ALPHA)
    f_lead = 2.0 * (nu + _ALPHA + 1.0) ** 2 * two
    f_tail = 2.0 * nu * nu * (two + 2.0)
    g_lead = 2.0 * (nu + 1.0) * (nu + _ALPHA + 1.0) * two
    g_tail = 2.0 * (nu + _ALPHA) * nu * (two + 2.0)
    return mid, f_lead, f_tail, g_lead, g_tail


def _basis(lam, y, need_f=True, need_g=True):
    """Return (F(a,b;9/4;y), F(a,b;1;1-y)) broadcast over lam and y."""
    nu, y = np.broadcast_arrays(_nu(lam), np.asarray(y, dtype=float))
    steps = np.where(nu >= 1.0, np.floor(nu), 0.0)
    nu0 = nu - steps
    f0 = _start_f(nu0, y) if need_f else None
    g0 = _start_g(nu0, y) if need_g else None
    top = int(steps.max()) if steps.size else 0
    if top == 0:
        return f0, g0
    f1 = _start_f(nu0 + 1.0, y) if need_f else None
    g1 = _start_g(nu0 + 1.0, y) if need_g else None
    for k in range(1, top):
        live = k < steps
        mid, f_lead, f_tail, g_lead, g_tail = _recurrence_coeffs(nu0 + k, y)
        if need_f:
            f_next = (mid * f1 - f_tail * f0) / f_lead
            f0, f1 = np.where(live, f1, f0), np.where(live, f_next, f1)
        if need_g:
            g_next = -(mid * g1 + g_tail * g0) / g_lead
            g0, g1 = np.where(live, g1, g0), np.where(live, g_next, g1)
    first = steps == 0
    f = np.where(first, f0, f1) if need_f else None
    g = np.where(first, g0, g1) if need_g else None
    return f, g


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def phi1(lam, y):
    """Upstream solution y F(a, b; 9/4; y); phi1/y -> 1 as y -> 0."""
    y = _check_y(y, upper_closed=False)
    f, _ = _basis(lam, y, need_g=False)
    return _scalar(y * f)


def phi1_star(lam, y):
    """Second upstream solution y^(-1/4) F(a-5/4, b-5/4; -1/4; y).

    Direct series only; it loses accuracy once lambda is large (|a| >~ 5),
    where nothing in the package uses it.
    """
    y = _check_y(y, upper_closed=False)
    nu = _nu(lam)
    a = -nu - _ALPHA
    b = C_PARAM + nu - _ALPHA
    a, b, yb = np.broadcast_arrays(a, b, y)
    upstream = (yb <= sf.Y_SWITCH) | sf._is_nonpos_int(a) | sf._is_nonpos_int(b)
    f = _split(
        upstream,
        lambda a_, b_, y_: sf._series_regular(a_, b_, 2.0 - C_PARAM, y_),
        sf._series_log,
        a, b, yb,
    )
    return _scalar(yb ** -0.25 * f)


def log_phi2_scale(lam):
    """ln K with K = Gamma(b) Gamma(1-a) / (sqrt(2) pi) = phi2(lambda, 1)."""
    nu = _nu(lam)
    return _scalar(sf._lgamma_pos(C_PARAM + nu) + sf._lgamma_pos(1.0 + nu) - math.log(_SQRT2_PI))


def phi2_scale(lam):
    with np.errstate(over="ignore"):
        return _scalar(np.exp(log_phi2_scale(lam)))


def phi2_scaled(lam, y):
    """phi2 / K = y F(a, b; 1; 1-y); equals 1 at y = 1."""
    y = _check_y(y, upper_closed=True)
    _, g = _basis(lam, y, need_f=False)
    return _scalar(y * g)


def phi2(lam, y):
    """Downstream solution, finite at y = 1 where it equals K(lambda).

    Overflows to inf once lambda is large enough for K to exceed the float
    range; use :func:`phi2_scaled` there.
    """
    with np.errstate(over="ignore"):
        return _scalar(phi2_scale(lam) * phi2_scaled(lam, y))


def phi2_downstream_limit(lam):
    """pi [cot(pi a) + cot(pi b)] / (Gamma(a) Gamma(1-b)), the y -> 1 value of phi2.

    Undefined (nan) where a or b is an integer; :func:`phi2_scale` gives the
    same number without that restriction.
    """
    p = spectral_params(lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        cot_sum = sf._cospi(p.a) / sf._sinpi(p.a) + sf._cospi(p.b) / sf._sinpi(p.b)
        return float(math.pi * cot_sum * sf._rgamma(p.a) * sf._rgamma(1.0 - p.b))


def wronskian(lam, y):
    """Closed-form phi1 phi2' - phi2 phi1'; exactly zero when a is a nonpositive integer."""
    y = _check_y(y)
    nu = _nu(lam)
    with np.errstate(over="ignore"):
        amp = 1.25 * sf._gamma(1.0 + nu) * sf._rgamma(-nu) / _GAMMA_2MC
    return _scalar(amp * y ** -0.25 / (1.0 - y))


def wronskian_scaled(lam, y):
    """Wronskian divided by K(lambda); same sign, never overflows."""
    y = _check_y(y)
    nu = _nu(lam)
    lg_a, sign_a = sf._lgamma_sign(-nu)
    with np.errstate(over="ignore", under="ignore"):
        ratio = sign_a * np.exp(-lg_a - sf._lgamma_pos(C_PARAM + nu))
    amp = 1.25 * _SQRT2_PI * ratio / _GAMMA_2MC
    return _scalar(amp * y ** -0.25 / (1.0 - y))


def dlog_wronskian_dlambda(lam):
    """d ln|W| / d lambda = [Psi(a) + Psi(1-a)] / sqrt(17 + 16 lambda)."""
    p = spectral_params(lam)
    return float((sf._digamma(p.a) + sf._digamma(1.0 - p.a)) / math.sqrt(17.0 + 16.0 * lam))


def dlog_phi2_scale_dlambda(lam):
    """d ln K / d lambda = [Psi(b) + Psi(1-a)] / sqrt(17 + 16 lambda)."""
    nu = _nu(lam)
    root = 8.0 * nu + 9.0
    return _scalar((sf._digamma(C_PARAM + nu) + sf._digamma(1.0 + nu)) / root)


def lambda_step(lam):
    return 1e-5 * (1.0 + abs(float(lam)))


def dphi_dlambda(which, lam, y, scaled=False):
    """d phi / d lambda by a Richardson-extrapolated central difference.

    ``which`` is "phi1" or "phi2"; with ``scaled=True`` the phi2 derivative
    is that of phi2/K.
    """
    funcs = {"phi1": phi1, "phi2": phi2_scaled if scaled else phi2}
    if which not in funcs:
        raise ValueError(f"which must be 'phi1' or 'phi2', got {which!r}")
    fn = funcs[which]
    lam = float(lam)
    h = lambda_step(lam)
    if lam - h < LAMBDA_MIN:
        raise DomainError("lambda too close to -17/16 for a central difference")
    lams = np.array([lam - h, lam + h, lam - 0.5 * h, lam + 0.5 * h])
    vals = fn(lams[:, None], np.atleast_1d(np.asarray(y, dtype=float))[None, :])
    coarse = (vals[1] - vals[0]) / (2.0 * h)
    fine = (vals[3] - vals[2]) / h
    out = (4.0 * fine - coarse) / 3.0
    return float(out[0]) if np.ndim(y) == 0 else out
