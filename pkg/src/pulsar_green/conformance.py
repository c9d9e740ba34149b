"""Numerical checks of the closed-form results, grouped into suites.

Every check returns :class:`Check` records carrying the measured error and
the tolerance it is held to.  ``run_suites`` drives the CLI ``verify``
command; the acceptance tests call the same functions.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import eigenbasis as eb
from . import identities as ids
from .quadrature import integrate_weighted
from .solver import (
    ProblemSpec,
    build_evaluator,
    find_eigenvalues,
    make_modes,
    normalization_quadrature,
    GreensEvaluator,
)

REFERENCE_SPECS = (ProblemSpec(0.4, 0.9), ProblemSpec(4.0, 0.4))
SUITES = (
    "wronskian",
    "ode",
    "normalization",
    "orthogonality",
    "completeness",
    "moments",
    "summation",
    "generating",
)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    error: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.error <= self.tolerance)


def _derivatives(fn, y, h):
    """First and second derivatives by 5-point central stencils."""
    f = [fn(y + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    return f[2], d1, d2


def random_points(count=20, seed=20240601, lam_range=(-1.0, 60.0), y_range=(0.05, 0.95)):
    rng = np.random.default_rng(seed)
    return rng.uniform(*lam_range, size=count), rng.uniform(*y_range, size=count)


def wronskian_checks(count=20, seed=20240601):
    checks = []
    lams, ys = random_points(count, seed)
    for lam, y in zip(lams, ys):
        h = 1e-3 * min(y, 1.0 - y)
        p1, d1, _ = _derivatives(lambda t: eb.phi1(lam, t), y, h)
        p2, d2, _ = _derivatives(lambda t: eb.phi2_scaled(lam, t), y, h)
        numeric = p1 * d2 - p2 * d1
        closed = eb.wronskian_scaled(lam, y)
        gap = abs(numeric - closed) / max(abs(closed), 1e-300)
        checks.append(Check("wronskian", f"fd lam={lam:.4g} y={y:.3g}", gap, 1e-7))
    grid = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    for lam in (0.5, 6.0, 25.0):
        inv = eb.wronskian(lam, grid) * grid ** 0.25 * (1.0 - grid)
        spread = float(np.ptp(inv) / np.max(np.abs(inv)))
        checks.append(Check("wronskian", f"invariance lam={lam:g}", spread, 1e-10))
    return checks


def ode_residual(fn, lam, y):
    """Residual of the homogeneous spatial equation, relative to its largest term."""
    h = 1e-3 * min(y, 1.0 - y)
    f, d1, d2 = _derivatives(fn, y, h)
    terms = (y * (1.0 - y) * d2, 0.25 * (1.0 - 5.0 * y) * d1, (lam * y + y - 1.0) / (4.0 * y) * f)
    return abs(sum(terms)) / max(abs(t) for t in terms)


def ode_checks(count=20, seed=7):
    checks = []
    lams, ys = random_points(count, seed)
    for lam, y in zip(lams, ys):
        for label, fn in (("phi1", eb.phi1), ("phi2", eb.phi2_scaled)):
            res = ode_residual(lambda t: fn(lam, t), lam, y)
            checks.append(Check("ode", f"{label} lam={lam:.4g} y={y:.3g}", res, 1e-5))
    return checks


def normalization_checks(spec, n_max=10, ev=None):
    ev = ev or build_evaluator(spec, n_max + 1)
    checks = []
    for mode in ev.modes[: n_max + 1]:
        numeric = normalization_quadrature(spec, mode)
        gap = abs(numeric - mode.C_n) / mode.C_n
        checks.append(Check("normalization", f"{_tag(spec)} n={mode.n}", gap, 1e-6))
    return checks


def overlap(spec, mode_n, mode_m):
    """int_0^1 y^(-3/4) g_n g_m dy by quadrature."""
    ev = GreensEvaluator(spec, (mode_n, mode_m), 2)

    def integrand(y):
        g = ev.eigenfunctions(y)
        return g[0] * g[1]

    # the integral is ~0, so the stopping rule must be absolute
    abs_tol = 1e-10 * math.sqrt(mode_n.C_n * mode_m.C_n)
    return integrate_weighted(integrand, rel_tol=1e-12, breakpoints=(spec.y0,), abs_tol=abs_tol).value


def orthogonality_checks(spec, n_max=8, lambdas=None):
    if lambdas is None:
        lambdas = find_eigenvalues(spec, n_max + 1)
    modes = make_modes(spec, lambdas[: n_max + 1])
    checks = []
    for i in range(n_max + 1):
        for j in range(i + 1, n_max + 1):
            value = overlap(spec, modes[i], modes[j])
            scaled = abs(value) / math.sqrt(modes[i].C_n * modes[j].C_n)
            checks.append(Check("orthogonality", f"{_tag(spec)} n={i} m={j}", scaled, 1e-6))
    return checks


def completeness_checks(spec, n_terms=20, ms=(0, 3)):
    from .solver import delta_completeness_check

    ev = build_evaluator(spec, n_terms)
    return [
        Check("completeness", f"{_tag(spec)} m={m}", abs(delta_completeness_check(ev, m)), 1e-6)
        for m in ms
    ]


def moment_checks(spec, ev, ell=2.0, ys=(0.2, 0.5, 0.95)):
    checks = []
    for y in ys:
        closed = ids.moment_closed(ell, spec, y)
        series = ids.moment_series(ell, ev, y)
        gap = abs(closed - series) / abs(closed)
        checks.append(Check("moments", f"{_tag(spec)} l={ell:g} y={y:g}", gap, 1e-3))
    return checks


def summation_checks(spec, ev, ell=2.0, y=0.5):
    full = ids.check_summation_formula(spec, ell, y, 500, ev=ev)
    half = ids.check_summation_formula(spec, ell, y, 250, ev=ev)
    ratio = half.rel_gap / max(full.rel_gap, 1e-300)
    return [
        Check("summation", f"{_tag(spec)} l={ell:g} y={y:g} gap", full.rel_gap, 1e-3),
        # expressed as an error so that a ratio below 2 fails
        Check("summation", f"{_tag(spec)} 250->500 shrink factor {ratio:.3g}", 2.0 / ratio, 1.0),
    ]


def generating_checks():
    checks = [Check("generating", "gamma identity", ids.gamma_identity().rel_gap, 1e-12)]
    bil = ids.bilinear_generating(0.3, 0.7, 2.0, 500)
    checks.append(Check("generating", "bilinear y0=0.3 y=0.7 l=2", bil.rel_gap, 1e-3))
    for y in (0.3, 0.6, 0.8):
        lin = ids.linear_generating(y, 2.0, 500)
        checks.append(Check("generating", f"linear y={y:g} l=2", lin.rel_gap, 1e-3))
    return checks


def _tag(spec):
    return f"beta={spec.beta:g} y0={spec.y0:g}"


def run_suites(suites=SUITES, specs=REFERENCE_SPECS, perturb_lambda0=0.0):
    """Run the named suites; ``perturb_lambda0`` shifts lambda_0 to test sensitivity."""
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    checks = []
    if "wronskian" in suites:
        checks += wronskian_checks()
    if "ode" in suites:
        checks += ode_checks()
    need_series = {"moments", "summation"} & set(suites)
    for spec in specs:
        lambdas = find_eigenvalues(spec, 500 if need_series else 11)
        lambdas = lambdas.copy()
        lambdas[0] += perturb_lambda0
        if "normalization" in suites:
            ev = build_evaluator(spec, 11, lambdas=lambdas)
            checks += normalization_checks(spec, 10, ev=ev)
        if "orthogonality" in suites:
            checks += orthogonality_checks(spec, 8, lambdas=lambdas)
        if "completeness" in suites:
            checks += completeness_checks(spec)
        if need_series:
            ev = build_evaluator(spec, 500, lambdas=lambdas)
            if "moments" in suites:
                checks += moment_checks(spec, ev)
            if "summation" in suites:
                checks += summation_checks(spec, ev)
    if "generating" in suites:
        checks += generating_checks()
    return checks
