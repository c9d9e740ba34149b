"""Real special functions: gamma family, Gauss hypergeometric series, Jacobi polynomials.

Everything here is implemented from scratch on top of numpy. The private
``_*`` helpers broadcast over arrays and are what the eigenfunction code
calls; the public functions are scalar and raise on poles or domain
violations.
"""

import math

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
Y_SWITCH = 0.5
MAX_TERMS = 200
SERIES_RTOL = 1e-16

JACOBI_ALPHA = 1.25
JACOBI_RECURRENCE_MIN_N = 5

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2k / (2k) for the digamma asymptotic series, k = 1..7
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
_DIGAMMA_SHIFT = 10.0


# ---------------------------------------------------------------------------
# vectorized kernels
# ---------------------------------------------------------------------------

def _sinpi(x):
    """sin(pi x) with exact argument reduction, so zeros at integers are exact."""
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    sign = np.where(np.fmod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * (x - n))


def _cospi(x):
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    sign = np.where(np.fmod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.cos(np.pi * (x - n))


def _lgamma_pos(x):
    """ln Gamma(x) for x >= 1/2 by the g=7, n=9 Lanczos approximation."""
    z = np.asarray(x, dtype=float) - 1.0
    acc = np.full_like(z, _LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)


def _lgamma_sign(x):
    """Return (ln|Gamma(x)|, sign Gamma(x)); poles give (inf, 0)."""
    x = np.asarray(x, dtype=float)
    refl = x < 0.5
    xp = np.where(refl, 1.0 - x, x)
    lg = _lgamma_pos(xp)
    s = _sinpi(np.where(refl, x, 0.5))
    with np.errstate(divide="ignore"):
        lg_refl = math.log(math.pi) - np.log(np.abs(s)) - lg
    out = np.where(refl, lg_refl, lg)
    sign = np.where(refl, np.sign(s), 1.0)
    return out, sign


def _gamma(x):
    lg, sign = _lgamma_sign(x)
    with np.errstate(over="ignore"):
        return sign * np.exp(lg)


def _rgamma(x):
    """1/Gamma(x); entire, exactly zero at the poles."""
    lg, sign = _lgamma_sign(x)
    with np.errstate(over="ignore", under="ignore"):
        return sign * np.exp(-lg)


def _digamma(x):
    """Psi(x); poles give +-inf."""
    x = np.asarray(x, dtype=float)
    refl = x < 0.5
    xp = np.where(refl, 1.0 - x, x)
    shift = np.zeros_like(xp)
    for _ in range(int(_DIGAMMA_SHIFT) + 1):
        low = xp < _DIGAMMA_SHIFT
        if not np.any(low):
            break
        shift = np.where(low, shift - 1.0 / xp, shift)
        xp = np.where(low, xp + 1.0, xp)
    inv2 = 1.0 / (xp * xp)
    poly = np.zeros_like(xp)
    for c in reversed(_DIGAMMA_ASYMPTOTIC):
        poly = (poly + c) * inv2
    psi = np.log(xp) - 0.5 / xp - poly + shift
    with np.errstate(divide="ignore", invalid="ignore"):
        cot = math.pi * _cospi(x) / _sinpi(x)
    return np.where(refl, psi - cot, psi)


def _is_nonpos_int(x):
    x = np.asarray(x, dtype=float)
    return (x <= 0.0) & (x == np.round(x))


def _series_regular(a, b, c, y, max_terms=MAX_TERMS):
    """Direct 2F1 series, broadcast over all arguments.

    Stops per element once two consecutive terms are below SERIES_RTOL
    relative to the partial sum; terminating series stop at their last term.
    """
    a, b, c, y = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, c, y)))
    total = np.ones(a.shape)
    term = np.ones(a.shape)
    biggest = np.ones(a.shape)
    quiet = np.zeros(a.shape, dtype=int)
    for n in range(max_terms):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1.0)) * y
        total = total + term
        biggest = np.maximum(biggest, np.abs(term))
        scale = np.maximum(np.abs(total), 2.0 ** -52 * biggest)
        small = np.abs(term) <= SERIES_RTOL * scale
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 2):
            return total
    raise ConvergenceError(f"2F1 series not converged after {max_terms} terms")


def _pole_product(z, n, rz_n):
    """rgamma(z) * (z)_n * Psi(z+n), continued through the poles of Psi."""
    w = z + n
    pole = _is_nonpos_int(w)
    with np.errstate(invalid="ignore", over="ignore"):
        direct = rz_n * _digamma(np.where(pole, 0.5, w))
    if not np.any(pole):
        return direct
    # z -> -m with n <= m:  limit is -(-1)^(m+n) (m!)^2 / (m-n)!
    m = np.where(pole, -np.round(z), 0.0)
    k = m - n
    lim_log = 2.0 * _lgamma_pos(m + 1.0) - _lgamma_pos(np.maximum(k, 0.0) + 1.0)
    parity = np.where(np.fmod(m + n, 2.0) == 0.0, 1.0, -1.0)
    with np.errstate(over="ignore"):
        limit = -parity * np.exp(lim_log)
    return np.where(pole, limit, direct)


def _series_log(a, b, y, max_terms=MAX_TERMS):
    """F(a, b; a+b; y) via the (1-y)^n ln(1-y) expansion, broadcast.

    The Gamma(a)Gamma(b) prefactor is folded into each term as
    rgamma(a)(a)_n etc., which keeps the sum finite when a or b approach a
    nonpositive integer.
    """
    a, b, y = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, y)))
    s = 1.0 - y
    log_s = np.log(s)
    ra = _rgamma(a)
    rb = _rgamma(b)
    weight = np.ones(a.shape)
    psi_n1 = -EULER_GAMMA
    total = np.zeros(a.shape)
    biggest = np.zeros(a.shape)
    quiet = np.zeros(a.shape, dtype=int)
    for n in range(max_terms):
        ga = _pole_product(a, n, ra)
        gb = _pole_product(b, n, rb)
        term = weight * (ra * rb * (2.0 * psi_n1 - log_s) - ga * rb - ra * gb)
        total = total + term
        biggest = np.maximum(biggest, np.abs(term))
        scale = np.maximum(np.abs(total), 2.0 ** -52 * biggest)
        small = np.abs(term) <= SERIES_RTOL * scale
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 2):
            return _gamma(a + b) * total
        ra = ra * (a + n)
        rb = rb * (b + n)
        weight = weight * s / ((n + 1.0) * (n + 1.0))
        psi_n1 = psi_n1 + 1.0 / (n + 1.0)
    raise ConvergenceError(f"logarithmic 2F1 series not converged after {max_terms} terms")


# ---------------------------------------------------------------------------
# public scalar API
# ---------------------------------------------------------------------------

def _check_not_pole(x, what):
    if x <= 0 and x == round(x):
        raise PoleError(f"{what} has a pole at x={x}")


def ln_gamma(x):
    """Return ``(ln|Gamma(x)|, sign)`` where sign is +1 or -1."""
    x = float(x)
    _check_not_pole(x, "Gamma")
    lg, sign = _lgamma_sign(x)
    return float(lg), int(sign)


def gamma(x):
    x = float(x)
    _check_not_pole(x, "Gamma")
    return float(_gamma(x))


def rgamma(x):
    """Reciprocal gamma function, zero at the poles of Gamma."""
    return float(_rgamma(float(x)))


def digamma(x):
    """Psi(x) = Gamma'(x)/Gamma(x)."""
    x = float(x)
    _check_not_pole(x, "digamma")
    return float(_digamma(x))


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    n = int(n)
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def hyp2f1(a, b, c, y):
    """Gauss series F(a, b; c; y) for 0 <= y <= Y_SWITCH.

    Terminating series (a or b a nonpositive integer) are polynomials and
    accepted for any y in [0, 1].
    """
    a, b, c, y = float(a), float(b), float(c), float(y)
    _check_not_pole(c, "2F1 lower parameter c")
    terminating = bool(_is_nonpos_int(a) or _is_nonpos_int(b))
    upper = 1.0 if terminating else Y_SWITCH
    if not 0.0 <= y <= upper:
        raise DomainError(f"hyp2f1 series used outside [0, {upper}]: y={y}")
    return float(_series_regular(a, b, c, y))


def hyp2f1_logcase(a, b, y):
    """F(a, b; a+b; y) for Y_SWITCH <= y < 1 from the logarithmic expansion."""
    a, b, y = float(a), float(b), float(y)
    if not Y_SWITCH <= y < 1.0:
        raise DomainError(f"logarithmic branch needs {Y_SWITCH} <= y < 1, got {y}")
    _check_not_pole(a, "logarithmic 2F1 prefactor (a)")
    _check_not_pole(b, "logarithmic 2F1 prefactor (b)")
    _check_not_pole(a + b, "2F1 lower parameter a+b")
    return float(_series_log(a, b, y))


def gauss_at_one(a, b, c):
    """Gauss's sum F(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))."""
    a, b, c = float(a), float(b), float(c)
    if c - a - b <= 0.0:
        raise DomainError("F(a,b;c;1) diverges for c - a - b <= 0")
    _check_not_pole(c, "Gamma(c)")
    return float(_gamma(c) * _gamma(c - a - b) * _rgamma(c - a) * _rgamma(c - b))


def _jacobi_series(n, y):
    lead = math.exp(float(_lgamma_pos(n + 2.25) - _lgamma_pos(n + 1.0) - _lgamma_pos(2.25)))
    return lead * _series_regular(-float(n), n + 2.25, 2.25, y, max_terms=n + 3)


def _jacobi_recurrence(n, y):
    x = 1.0 - 2.0 * np.asarray(y, dtype=float)
    al = JACOBI_ALPHA
    p_prev = np.ones_like(x)
    p = 0.5 * ((al + 2.0) * x + al)
    for k in range(1, n):
        two_k = 2.0 * k + al
        lhs = 2.0 * (k + 1) * (k + al + 1.0) * two_k
        mid = (two_k + 1.0) * ((two_k + 2.0) * two_k * x + al * al)
        tail = 2.0 * (k + al) * k * (two_k + 2.0)
        p_prev, p = p, (mid * p - tail * p_prev) / lhs
    return p


def _jacobi(n, y):
    if n == 0:
        return np.ones_like(np.asarray(y, dtype=float))
    if n < JACOBI_RECURRENCE_MIN_N:
        return _jacobi_series(n, y)
    return _jacobi_recurrence(n, y)


def jacobi_p(n, y):
    """P_n^{(5/4, 0)}(1 - 2y).

    Terminating hypergeometric series for n <= 4, three-term recurrence in
    n beyond that (the series cancels badly from n ~ 6). ``y`` may be an array.
    """
    n = int(n)
    if n < 0:
        raise DomainError("jacobi_p needs n >= 0")
    out = _jacobi(n, y)
    return float(out) if np.ndim(out) == 0 else out


def jacobi_table(n_max, y):
    """Rows P_0 .. P_{n_max-1} of P_n^{(5/4,0)}(1-2y) from one recurrence sweep."""
    x = 1.0 - 2.0 * np.asarray(y, dtype=float)
    al = JACOBI_ALPHA
    rows = np.empty((n_max,) + x.shape)
    if n_max == 0:
        return rows
    rows[0] = 1.0
    if n_max == 1:
        return rows
    rows[1] = 0.5 * ((al + 2.0) * x + al)
    for k in range(1, n_max - 1):
        two_k = 2.0 * k + al
        lhs = 2.0 * (k + 1) * (k + al + 1.0) * two_k
        mid = (two_k + 1.0) * ((two_k + 2.0) * two_k * x + al * al)
        tail = 2.0 * (k + al) * k * (two_k + 2.0)
        rows[k + 1] = (mid * rows[k] - tail * rows[k - 1]) / lhs
    return rows
