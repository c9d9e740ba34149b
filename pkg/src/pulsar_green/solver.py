"""Eigenvalues, eigenfunctions and the series for the Green's function.

All spectra are dimensionless: ``f_hat = f_G pi r0^2 eps0^3 v_c / N0_dot``,
so that

    f_hat(y, e) = (12/7) sum_n A_hat_n e^(-lambda_n) g_n(y),   e = eps/eps0 >= 1.

For beta > 0 the eigenvalue condition is ``W - (3 beta / 4 y0) phi1 phi2 = 0``.
Dividing by K = phi2(lambda, 1) > 0 gives a residual with the same roots
that is smooth in lambda and never overflows; roots are bracketed in the
windows between the beta = 0 eigenvalues ``4n^2 + 9n + 4`` and refined
by bisection.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import eigenbasis as eb
from . import specfun as sf
from .errors import (
    ConvergenceError,
    DomainError,
    GridError,
    MissedRootError,
    NonPositiveNormalizationError,
)
from .quadrature import integrate_weighted

Y0_MIN = 1e-6
Y0_MAX = 1.0 - 1e-6
MAX_COUNT = 1000
DEFAULT_TERMS = 20
SCAN_START = 3.9
SCAN_POINTS = 13
BISECT_RTOL = 1e-10
SPECTRUM_PREFACTOR = 12.0 / 7.0


@dataclass(frozen=True)
class ProblemSpec:
    beta: float
    y0: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0.0):
            raise DomainError(f"beta must be finite and >= 0, got {self.beta}")
        if not Y0_MIN <= self.y0 <= Y0_MAX:
            raise DomainError(f"y0 must lie in [{Y0_MIN}, {Y0_MAX}], got {self.y0}")


@dataclass(frozen=True)
class EigenMode:
    n: int
    lambda_n: float
    B_n: float
    C_n: float
    A_hat_n: float
    # phi1(y0) / phi2_scaled(y0); B_n without the K(lambda) factor that overflows
    B_scaled: float = field(default=1.0, repr=False)


def anchor(n):
    """Eigenvalue of the beta = 0 problem, 4n^2 + 9n + 4."""
    n = np.asarray(n)
    return 4.0 * n * n + 9.0 * n + 4.0


def _residual_scaled(lam, spec):
    """(W - 3 beta phi1 phi2 / (4 y0)) / K, broadcast over lam."""
    lam = np.asarray(lam, dtype=float)
    w = eb.wronskian_scaled(lam, spec.y0)
    if spec.beta == 0.0:
        return np.asarray(w, dtype=float)
    f, g = eb._basis(lam, spec.y0)
    return w - 0.75 * spec.beta / spec.y0 * (spec.y0 * f) * (spec.y0 * g)


def eigen_residual(lam, spec, scaled=False):
    """Left side of the eigenvalue equation at lambda.

    The unscaled value overflows for lambda beyond a few thousand; pass
    ``scaled=True`` for the residual divided by phi2(lambda, 1).
    """
    out = _residual_scaled(lam, spec)
    if not scaled:
        with np.errstate(over="ignore"):
            out = out * eb.phi2_scale(lam)
    return float(out) if np.ndim(out) == 0 else out


def _bracket(spec, lo, hi, points):
    """Sample each window [lo, hi) and locate its roots.

    Returns (root count, bracket left, bracket right, residual at left).
    Exact zeros on the grid count as roots; a zero at the right edge
    belongs to the next window and is ignored.
    """
    grid = lo[:, None] + (hi - lo)[:, None] * np.linspace(0.0, 1.0, points)[None, :]
    grid[:, -1] = hi
    vals = _residual_scaled(grid, spec)
    vals[:, -1] = np.where(vals[:, -1] == 0.0, np.nan, vals[:, -1])
    zero = vals == 0.0
    flip = (vals[:, :-1] * vals[:, 1:]) < 0.0
    count = zero.sum(axis=1) + flip.sum(axis=1)
    hit = zero[:, :-1] | flip
    first = np.argmax(hit, axis=1)
    rows = np.arange(lo.size)
    b_lo = grid[rows, first]
    f_lo = vals[rows, first]
    b_hi = np.where(f_lo == 0.0, b_lo, grid[rows, first + 1])
    return count, b_lo, b_hi, f_lo


def _bisect(spec, lo, hi, f_lo):
    """Shrink sign-change brackets to |hi - lo| <= 1e-10 (1 + lambda)."""
    lo, hi = lo.copy(), hi.copy()
    done = f_lo == 0.0
    f_lo = np.where(done, 1.0, f_lo)
    for _ in range(200):
        if np.all(done | (hi - lo <= BISECT_RTOL * (1.0 + np.abs(lo)))):
            return np.where(done, lo, 0.5 * (lo + hi))
        mid = 0.5 * (lo + hi)
        f_mid = _residual_scaled(mid, spec)
        hit = (f_mid == 0.0) & ~done
        lo = np.where(hit, mid, lo)
        done = done | hit
        right = ~done & (np.sign(f_mid) == np.sign(f_lo))
        lo = np.where(right, mid, lo)
        f_lo = np.where(right, f_mid, f_lo)
        hi = np.where(~done & ~right, mid, hi)
    raise ConvergenceError("bisection did not converge")


def find_eigenvalues(spec, count, use_closed_form=True):
    """The first ``count`` eigenvalues in increasing order.

    With beta = 0 the closed form 4n^2 + 9n + 4 is returned unless
    ``use_closed_form`` is false, in which case the general search runs.
    """
    count = int(count)
    if not 1 <= count <= MAX_COUNT:
        raise DomainError(f"count must lie in [1, {MAX_COUNT}], got {count}")
    if spec.beta == 0.0 and use_closed_form:
        return anchor(np.arange(count)).astype(float)
    edges = anchor(np.arange(count + 1)).astype(float)
    lo, hi = edges[:-1].copy(), edges[1:]
    lo[0] = SCAN_START
    n_roots, b_lo, b_hi, f_lo = _bracket(spec, lo, hi, SCAN_POINTS)
    points = SCAN_POINTS
    for _ in range(3):
        bad = np.flatnonzero(n_roots != 1)
        if bad.size == 0:
            break
        points = 4 * points
        n_roots[bad], b_lo[bad], b_hi[bad], f_lo[bad] = _bracket(spec, lo[bad], hi[bad], points)
    bad = np.flatnonzero(n_roots != 1)
    if bad.size:
        windows = ", ".join(f"n={k} ({int(n_roots[k])} roots)" for k in bad[:5])
        raise MissedRootError(f"expected one root per bracket window; found {windows}")
    return _bisect(spec, b_lo, b_hi, f_lo)


def _phi1_phi2s(lam, y):
    f, g = eb._basis(lam, y)
    y = np.asarray(y, dtype=float)
    return y * f, y * g


def _g_values(spec, lam, y):
    """g_n(y) for an array of eigenvalues (rows) and points y (columns)."""
    lam = np.asarray(lam, dtype=float)[:, None]
    y = np.atleast_1d(np.asarray(y, dtype=float))[None, :]
    if spec.beta == 0.0:
        return eb.phi1(lam, y)
    y_min = np.minimum(y, spec.y0)
    y_max = np.maximum(y, spec.y0)
    _, p2_0 = _phi1_phi2s(lam, spec.y0)
    p1 = eb.phi1(lam, y_min)
    p2 = eb.phi2_scaled(lam, y_max)
    return p1 * p2 / p2_0


def _dlog_dlambda(lam, y):
    """Richardson central differences of ln phi1 and ln phi2_scaled in lambda."""
    lam = np.asarray(lam, dtype=float)
    h = 1e-5 * (1.0 + np.abs(lam))
    offsets = np.array([-1.0, 1.0, -0.5, 0.5])
    lams = lam[None, :] + offsets[:, None] * h[None, :]
    p1, p2 = _phi1_phi2s(lams, y)
    out = []
    for vals in (p1, p2):
        coarse = (vals[1] - vals[0]) / (2.0 * h)
        fine = (vals[3] - vals[2]) / h
        out.append((4.0 * fine - coarse) / 3.0)
    base1, base2 = _phi1_phi2s(lam, y)
    return out[0] / base1, out[1] / base2


def _normalization_beta0(n):
    n = np.asarray(n, dtype=float)
    log_ratio = sf._lgamma_pos(n + 1.0) + sf._lgamma_pos(eb.C_PARAM) - sf._lgamma_pos(eb.C_PARAM + n)
    return np.exp(2.0 * log_ratio) / (2.0 * n + eb.C_PARAM)


def _normalization_closed(spec, lam):
    scalar = np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    y0 = spec.y0
    p = eb._nu(lam)
    a = -p
    b = eb.C_PARAM + p
    root = np.sqrt(17.0 + 16.0 * lam)
    p1, _ = _phi1_phi2s(lam, y0)
    d1, d2 = _dlog_dlambda(lam, y0)
    bracket = (sf._digamma(a) - sf._digamma(b)) / root - d1 - d2
    out = 3.0 * spec.beta * y0 ** -0.75 * (1.0 - y0) * p1 * p1 * bracket
    return out[0] if scalar else out


def normalization(spec, n, lam):
    """Closed-form normalization integral int_0^1 y^(-3/4) g_n^2 dy.

    ``n`` and ``lam`` may be arrays of equal length.
    """
    if spec.beta == 0.0:
        out = _normalization_beta0(n)
    else:
        out = _normalization_closed(spec, lam)
    out = np.asarray(out, dtype=float)
    if np.any(~(out > 0.0)):
        raise NonPositiveNormalizationError(
            "normalization integral is not positive; the eigenvalue is likely misconverged"
        )
    return float(out) if out.ndim == 0 else out


def normalization_quadrature(spec, mode, rel_tol=1e-10):
    """Quadrature of int_0^1 y^(-3/4) g_n^2 dy, the oracle for :func:`normalization`."""
    return integrate_weighted(
        lambda y: _g_values(spec, [mode.lambda_n], y)[0] ** 2,
        rel_tol=rel_tol,
        breakpoints=(spec.y0,),
    ).value


def _matching_constant_beta0(n):
    # phi1 / phi2 when the two solutions are proportional
    lg1, s1 = sf._lgamma_sign(-n - 1.25)
    lg2 = sf._lgamma_pos(n + eb.C_PARAM)
    return s1 * math.exp(math.lgamma(eb.C_PARAM) + lg1 - lg2)


def make_modes(spec, lambdas):
    lambdas = np.asarray(lambdas, dtype=float)
    n = np.arange(lambdas.size)
    c_n = np.atleast_1d(normalization(spec, n, lambdas))
    p1, p2s = _phi1_phi2s(lambdas, spec.y0)
    a_hat = spec.y0 ** -0.75 * p1 / c_n
    log_k = np.atleast_1d(eb.log_phi2_scale(lambdas))
    modes = []
    for k in range(lambdas.size):
        if spec.beta == 0.0:
            b_scaled = 1.0
            b_n = _matching_constant_beta0(k)
        else:
            b_scaled = float(p1[k] / p2s[k])
            with np.errstate(under="ignore"):
                b_n = float(b_scaled * np.exp(-log_k[k]))
        modes.append(EigenMode(k, float(lambdas[k]), b_n, float(c_n[k]), float(a_hat[k]), b_scaled))
    return tuple(modes)


@dataclass(frozen=True)
class GreensEvaluator:
    spec: ProblemSpec
    modes: tuple
    n_terms: int

    @property
    def lambdas(self):
        return np.array([m.lambda_n for m in self.modes[: self.n_terms]])

    @property
    def coefficients(self):
        return np.array([m.A_hat_n for m in self.modes[: self.n_terms]])

    def eigenfunctions(self, y):
        """g_n(y) for the retained modes; shape (n_terms, len(y))."""
        return _g_values(self.spec, self.lambdas, y)

    def __call__(self, y, e_ratio):
        return greens_function(self, y, e_ratio)


def build_evaluator(spec, n_terms=DEFAULT_TERMS, lambdas=None):
    """Eigenmodes 0..n_terms-1.  ``lambdas`` overrides the root search."""
    n_terms = int(n_terms)
    if n_terms < 1:
        raise DomainError("n_terms must be positive")
    if lambdas is None:
        lambdas = find_eigenvalues(spec, n_terms)
    return GreensEvaluator(spec, make_modes(spec, lambdas[:n_terms]), n_terms)


def eigenfunction_g(mode, spec, y):
    """Global eigenfunction: phi1 upstream of y0, B_n phi2 downstream."""
    out = _g_values(spec, [mode.lambda_n], y)[0]
    return float(out[0]) if np.ndim(y) == 0 else out


def greens_function(ev, y, e_ratio):
    """f_hat(y, e) on the outer product of ``y`` and ``e_ratio``.

    Scalars in give a scalar out; otherwise the result has shape
    (len(y), len(e_ratio)).  Energies below injection give exactly 0.
    """
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    e_arr = np.atleast_1d(np.asarray(e_ratio, dtype=float))
    if np.any(e_arr <= 0.0):
        raise DomainError("e_ratio must be positive")
    g = ev.eigenfunctions(y_arr)
    weights = ev.coefficients[:, None] * g
    log_e = np.log(np.maximum(e_arr, 1.0))
    with np.errstate(under="ignore"):
        powers = np.exp(-ev.lambdas[:, None] * log_e[None, :])
    out = SPECTRUM_PREFACTOR * (weights.T @ powers)
    out[:, e_arr < 1.0] = 0.0
    if np.ndim(y) == 0 and np.ndim(e_ratio) == 0:
        return float(out[0, 0])
    return out


def delta_completeness_check(ev, m, rel_tol=1e-10):
    """int y^(-3/4) [sum_n A_hat_n g_n] g_m dy - y0^(-3/4) g_m(y0); zero in exact arithmetic."""
    if not 0 <= m < ev.n_terms:
        raise DomainError(f"m must lie in [0, {ev.n_terms})")
    spec = ev.spec

    def integrand(y):
        g = ev.eigenfunctions(y)
        return (ev.coefficients @ g) * g[m]

    total = integrate_weighted(integrand, rel_tol=rel_tol, breakpoints=(spec.y0,)).value
    return total - spec.y0 ** -0.75 * float(ev.eigenfunctions([spec.y0])[m, 0])


@dataclass(frozen=True)
class SourceSpectrum:
    """Injected photon spectrum j(eps0) on an increasing energy grid."""

    energy: np.ndarray
    j: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.energy, dtype=float)
        j = np.asarray(self.j, dtype=float)
        if e.ndim != 1 or e.shape != j.shape or e.size < 2:
            raise GridError("energy and j must be 1-d arrays of equal length >= 2")
        if not (np.all(np.isfinite(e)) and np.all(np.isfinite(j))):
            raise GridError("source spectrum contains non-finite values")
        if np.any(e <= 0.0) or np.any(np.diff(e) <= 0.0):
            raise GridError("energy grid must be positive and strictly increasing")
        if np.any(j < 0.0):
            raise GridError("j must be non-negative")
        object.__setattr__(self, "energy", e)
        object.__setattr__(self, "j", j)


def read_source(path):
    """Two whitespace-separated columns ``epsilon0 j``; '#' starts a comment."""
    try:
        data = np.loadtxt(path, comments="#", ndmin=2)
    except ValueError as exc:
        raise GridError(f"cannot parse source file {path}: {exc}") from None
    if data.shape[1] != 2:
        raise GridError(f"source file needs exactly two columns, got {data.shape[1]}")
    if np.any(data <= 0.0):
        raise GridError("source file columns must be positive")
    return SourceSpectrum(data[:, 0], data[:, 1])


def planck_source(temperature, energy, total=1.0):
    """Blackbody photon-number spectrum j ~ e^2 / (exp(e/T) - 1), scaled to ``total`` photons."""
    energy = np.asarray(energy, dtype=float)
    shape = energy ** 2 / np.expm1(energy / temperature)
    norm = 2.0 * 1.2020569031595942 * temperature ** 3
    return SourceSpectrum(energy, total * shape / norm)


def convolve_spectrum(ev, source, y, epsilon):
    """int j(e0) f_hat(y, eps/e0) e0^(-3) de0 by the trapezoid rule on the source grid.

    Only grid points with e0 <= eps contribute.  The result is in units of
    1/(pi r0^2 v_c) with energies in the units of the source grid.
    """
    keep = source.energy <= epsilon
    if np.count_nonzero(keep) < 2:
        return 0.0
    e0 = source.energy[keep]
    f_hat = greens_function(ev, [y], epsilon / e0)[0]
    return float(np.trapezoid(source.j[keep] * f_hat * e0 ** -3.0, e0))
