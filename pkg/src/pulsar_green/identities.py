"""Energy moments and the closed-form summation identities they imply.

Moments are reported in units of N0_dot eps0^(l-2) / (pi r0^2 v_c), the
same convention as ``f_hat``, so the closed form and the eigenmode series
can be compared directly:

    I_hat_l(y) = (12/7) sum_n A_hat_n g_n(y) / (lambda_n - l - 1).

The beta = 0 limit gives two generating functions for the Jacobi
polynomials P_n^(5/4, 0), checked here by partial sums.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import eigenbasis as eb
from . import specfun as sf
from .errors import DivergenceError, DomainError, ResonanceError
from .solver import SPECTRUM_PREFACTOR, build_evaluator

DEFAULT_SUM_TERMS = 500
DEFAULT_TOLERANCE = 1e-3
RESONANCE_GUARD = 1e-10
_TINY = 1e-300


@dataclass(frozen=True)
class MomentSpec:
    ell: float
    a_ell: float

    @classmethod
    def of(cls, ell):
        ell = float(ell)
        if 33.0 + 16.0 * ell < 0.0:
            raise DomainError(f"moment order needs 33 + 16 l >= 0, got l = {ell}")
        return cls(ell, (9.0 - math.sqrt(33.0 + 16.0 * ell)) / 8.0)

    @property
    def lam(self):
        return self.ell + 1.0


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    rel_gap: float
    terms_used: int

    @classmethod
    def compare(cls, name, lhs, rhs, terms_used):
        lhs, rhs = float(lhs), float(rhs)
        gap = abs(lhs - rhs) / max(abs(lhs), abs(rhs), _TINY)
        return cls(name, lhs, rhs, gap, int(terms_used))

    def passed(self, tol=DEFAULT_TOLERANCE):
        return self.rel_gap <= tol


def _as_moment(ms):
    return ms if isinstance(ms, MomentSpec) else MomentSpec.of(ms)


def _moment_denominator(lam, y0, beta):
    """(3 beta phi1 phi2 - 4 y0 W) / K at (lam, y0), with the resonance guard."""
    p1 = eb.phi1(lam, y0)
    p2 = eb.phi2_scaled(lam, y0)
    absorb = 3.0 * beta * p1 * p2
    wr = 4.0 * y0 * eb.wronskian_scaled(lam, y0)
    den = absorb - wr
    if abs(den) <= RESONANCE_GUARD * max(abs(absorb), abs(wr), _TINY) or den == 0.0:
        raise ResonanceError(f"moment denominator vanishes at lambda = {lam}")
    return den, p1, p2


def moment_closed(ms, spec, y):
    """Closed-form dimensionless energy moment at position y."""
    ms = _as_moment(ms)
    lam, y0 = ms.lam, spec.y0
    den, p1_0, p2_0 = _moment_denominator(lam, y0, spec.beta)
    if y <= y0:
        shape = p2_0 * eb.phi1(lam, y)
    else:
        shape = p1_0 * eb.phi2_scaled(lam, y)
    return SPECTRUM_PREFACTOR * shape / ((1.0 - y0) * den)


def moment_series(ms, ev, y):
    """Eigenmode series for the dimensionless energy moment."""
    ms = _as_moment(ms)
    lam = ev.lambdas
    if lam[0] <= ms.lam:
        raise DivergenceError(
            f"moment l = {ms.ell} diverges: lambda_0 = {lam[0]:.6g} <= l + 1"
        )
    g = ev.eigenfunctions([y])[:, 0]
    terms = ev.coefficients * g / (lam - ms.lam)
    return SPECTRUM_PREFACTOR * math.fsum(terms)


def _evaluator(spec, n_sum, ev=None):
    if ev is not None and ev.n_terms >= n_sum:
        return ev
    return build_evaluator(spec, n_sum)


def check_summation_formula(spec, ell, y, n_sum=DEFAULT_SUM_TERMS, ev=None):
    """Sum over eigenmodes of phi1(y0) g_n(y) / ((lambda_n - l - 1) C_n) against its closed form."""
    ms = _as_moment(ell)
    ev = _evaluator(spec, n_sum, ev)
    lam, y0 = ms.lam, spec.y0
    lams = ev.lambdas[:n_sum]
    if np.any(np.abs(lams - lam) <= RESONANCE_GUARD * lams):
        raise ResonanceError(f"l + 1 = {lam} coincides with an eigenvalue")
    c_n = np.array([m.C_n for m in ev.modes[:n_sum]])
    p1_0 = eb.phi1(lams, y0)
    g = ev.eigenfunctions([y])[:n_sum, 0]
    lhs = math.fsum(p1_0 * g / ((lams - lam) * c_n))

    y_min, y_max = min(y, y0), max(y, y0)
    outer = eb.phi1(lam, y_min) * eb.phi2_scaled(lam, y_max)
    if spec.beta == 0.0:
        w = eb.wronskian_scaled(lam, y0)
        if w == 0.0:
            raise ResonanceError(f"Wronskian vanishes at lambda = {lam}")
        rhs = -outer / (4.0 * y0 ** 0.25 * (1.0 - y0) * w)
    else:
        den, _, _ = _moment_denominator(lam, y0, spec.beta)
        rhs = y0 ** 0.75 * outer / ((1.0 - y0) * den)
    return IdentityReport.compare("summation", lhs, rhs, n_sum)


def _generating_denominators(ell, n_sum):
    n = np.arange(n_sum, dtype=float)
    den = 4.0 * n * n + 9.0 * n + 3.0 - ell
    scale = np.maximum(np.abs(ell), 4.0 * n * n + 9.0 * n + 3.0)
    if np.any(np.abs(den) <= RESONANCE_GUARD * scale):
        k = int(np.argmin(np.abs(den)))
        raise ResonanceError(f"term n = {k} has a vanishing denominator for l = {ell}")
    return n, den


def _gamma_ratio(a):
    """Gamma(a) / Gamma(1 - a), finite away from a = 0, -1, -2, ..."""
    ra = sf._rgamma(a)
    if ra == 0.0:
        raise ResonanceError(f"Gamma({a}) has a pole")
    return float(sf._rgamma(1.0 - a) / ra)


def bilinear_generating(y0, y, ell, n_sum=DEFAULT_SUM_TERMS):
    """sum (9+8n) P_n(1-2 y0) P_n(1-2 y) / (4n^2+9n+3-l) against its closed form."""
    ms = _as_moment(ell)
    n, den = _generating_denominators(ms.ell, n_sum)
    table = sf.jacobi_table(n_sum, np.array([y0, y]))
    lhs = math.fsum((9.0 + 8.0 * n) * table[:, 0] * table[:, 1] / den)
    y_min, y_max = min(y, y0), max(y, y0)
    rhs = (
        3.2 * math.gamma(0.75) * _gamma_ratio(ms.a_ell)
        * eb.phi1(ms.lam, y_min) * eb.phi2(ms.lam, y_max) / (y * y0)
    )
    return IdentityReport.compare("bilinear", lhs, rhs, n_sum)


def linear_terms(y, ell, n_sum):
    """Terms of the linear generating series, in ascending n."""
    ms = _as_moment(ell)
    n, den = _generating_denominators(ms.ell, n_sum)
    log_ratio = sf._lgamma_pos(n + eb.C_PARAM) - sf._lgamma_pos(n + 1.0)
    p = sf.jacobi_table(n_sum, np.array([y]))[:, 0]
    return (9.0 + 8.0 * n) * np.exp(log_ratio) * p / den


def cesaro_mean(terms):
    """(C,1) mean of the partial sums; equals the sum whenever the series converges."""
    partial = np.cumsum(terms)
    return math.fsum(partial) / partial.size


def linear_generating(y, ell, n_sum=DEFAULT_SUM_TERMS, summation="cesaro"):
    """Linear Jacobi generating function against its closed form.

    The terms decay only like n^(-1/4) with an oscillating sign, so the
    raw partial sum creeps toward the limit; the default compares the
    Cesaro (C,1) mean instead.  ``summation="partial"`` gives the raw sum.
    """
    ms = _as_moment(ell)
    terms = linear_terms(y, ms.ell, n_sum)
    if summation == "cesaro":
        lhs = cesaro_mean(terms)
    elif summation == "partial":
        lhs = math.fsum(terms)
    else:
        raise ValueError(f"summation must be 'cesaro' or 'partial', got {summation!r}")
    rhs = math.sqrt(2.0) * math.pi * _gamma_ratio(ms.a_ell) * eb.phi2(ms.lam, y) / y
    return IdentityReport.compare(f"linear[{summation}]", lhs, rhs, n_sum)


def gamma_identity():
    """Gamma(3/4) Gamma(9/4) = (5/16) pi sqrt(2)."""
    lhs = sf.gamma(0.75) * sf.gamma(2.25)
    return IdentityReport.compare("gamma", lhs, 5.0 / 16.0 * math.pi * math.sqrt(2.0), 0)
