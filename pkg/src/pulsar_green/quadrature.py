"""Adaptive quadrature for integrals of the form  int_0^1 y^(-3/4) f(y) dy.

The substitution u = y^(1/4) turns the weight into a constant,
int_0^1 4 f(u^4) du, so the left endpoint needs no special treatment.
Panels use the 7/15-point Gauss-Kronrod pair and are bisected where the
error estimate is largest.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonFiniteIntegrandError, ToleranceNotMetError

DEFAULT_RTOL = 1e-9
RIGHT_CUTOFF = 1.0 - 1e-14
MAX_PANELS = 4000

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] and matching weights; Gauss nodes are the odd entries of _XGK
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[13, 11, 9]] = _WG[:3]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _eval(f, y):
    try:
        vals = np.asarray(f(y), dtype=float)
    except TypeError:
        vals = None
    if vals is None or vals.shape != y.shape:
        vals = np.array([float(f(v)) for v in y])
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrandError("integrand returned a non-finite value")
    return vals


def _panel(f, lo, hi):
    half = 0.5 * (hi - lo)
    u = 0.5 * (hi + lo) + half * _NODES
    vals = 4.0 * _eval(f, u ** 4)
    kronrod = half * float(np.dot(_KRONROD_W, vals))
    gauss = half * float(np.dot(_GAUSS_W, vals))
    resabs = half * float(np.dot(_KRONROD_W, np.abs(vals)))
    err = max(abs(kronrod - gauss), 50.0 * np.finfo(float).eps * resabs)
    return kronrod, err


def integrate_weighted(f, rel_tol=DEFAULT_RTOL, breakpoints=(), max_panels=MAX_PANELS, abs_tol=0.0):
    """Approximate int_0^1 y^(-3/4) f(y) dy.

    ``f`` receives a 1-d array of y values (scalar functions are looped
    over).  ``breakpoints`` in (0, 1) start the subdivision there, which
    helps for integrands with a kink such as a derivative jump.  Refinement
    stops once the error estimate is below ``rel_tol * |value|`` or
    ``abs_tol``; the latter matters for integrals that are nearly zero.
    """
    if not 1e-12 <= rel_tol <= 1e-3:
        raise DomainError(f"rel_tol must lie in [1e-12, 1e-3], got {rel_tol}")
    u_top = RIGHT_CUTOFF ** 0.25
    cuts = sorted({0.0, u_top, *(float(b) ** 0.25 for b in breakpoints if 0.0 < b < 1.0)})
    heap = []
    evaluations = 0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, err = _panel(f, lo, hi)
        evaluations += 15
        heapq.heappush(heap, (-err, lo, hi, val))

    def totals():
        vals = sorted((lo, val) for _, lo, _, val in heap)
        return math.fsum(v for _, v in vals), math.fsum(-e for e, _, _, _ in heap)

    value, error = totals()
    while error > max(rel_tol * abs(value), abs_tol):
        if len(heap) >= max_panels:
            raise ToleranceNotMetError(
                f"quadrature stopped at {len(heap)} panels with error {error:.3g}",
                value, error, evaluations,
            )
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for a, b in ((lo, mid), (mid, hi)):
            val, err = _panel(f, a, b)
            heapq.heappush(heap, (-err, a, b, val))
        evaluations += 30
        value, error = totals()
    return QuadratureResult(value, error, evaluations)
