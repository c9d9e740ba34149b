"""Acceptance criteria, one test each, with a PASS/FAIL line printed to the terminal."""

import time

import numpy as np
import pytest

from pulsar_green import conformance as cf
from pulsar_green import eigenbasis as eb
from pulsar_green import identities as ids
from pulsar_green import solver
from pulsar_green import specfun as sf
from pulsar_green.errors import DivergenceError
from pulsar_green.solver import ProblemSpec

SPECS = cf.REFERENCE_SPECS
SPECTRUM_Y = (0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 1.0)


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return emit


@pytest.fixture(scope="module")
def evaluators_500():
    return {spec: solver.build_evaluator(spec, 500) for spec in SPECS}


def test_c01_reference_eigenvalues(report):
    targets = {SPECS[0]: 4.231, SPECS[1]: 6.325}
    details, ok = [], True
    for spec, target in targets.items():
        start = time.perf_counter()
        lam0 = solver.find_eigenvalues(spec, 1)[0]
        elapsed = time.perf_counter() - start
        ok &= abs(lam0 - target) <= 1e-3 and elapsed < 5.0
        details.append(f"lambda0={lam0:.6f} (target {target}, {elapsed:.2f}s)")
    report("1 eigenvalue reproduction", ok, "; ".join(details))


def test_c02_beta0_spectrum_without_shortcut(report):
    lams = solver.find_eigenvalues(ProblemSpec(0.0, 0.6), 11, use_closed_form=False)
    worst = float(np.max(np.abs(lams - solver.anchor(np.arange(11)))))
    report("2 beta=0 spectrum", worst <= 1e-6, f"max |dlambda| = {worst:.2e}")


def test_c03_normalization(report):
    checks = [c for spec in SPECS for c in cf.normalization_checks(spec, 10)]
    worst = max(c.error for c in checks)
    report("3 normalization closed form vs quadrature", all(c.passed for c in checks), f"worst rel gap {worst:.2e}")


def test_c04_orthogonality(report):
    checks = [c for spec in SPECS for c in cf.orthogonality_checks(spec, 8)]
    worst = max(c.error for c in checks)
    report("4 orthogonality n != m <= 8", all(c.passed for c in checks), f"worst scaled overlap {worst:.2e}")


def test_c05_wronskian(report):
    checks = cf.wronskian_checks(20)
    fd = max(c.error for c in checks if c.name.startswith("fd"))
    inv = max(c.error for c in checks if c.name.startswith("invariance"))
    report("5 Wronskian", all(c.passed for c in checks), f"fd gap {fd:.2e}, invariance spread {inv:.2e}")


def test_c06_twenty_terms_match_sixty(report):
    spec = SPECS[0]
    e = np.geomspace(1.0, 1e4, 200)[1:]  # the injection energy itself carries the delta term
    f20 = solver.greens_function(solver.build_evaluator(spec, 20), SPECTRUM_Y, e)
    f60 = solver.greens_function(solver.build_evaluator(spec, 60), SPECTRUM_Y, e)
    worst = float(np.max(np.abs(f20 - f60) / np.abs(f60)))
    report("6 f20 vs f60", worst <= 1e-5, f"max rel deviation {worst:.2e} over e in (1, 1e4]")


def test_c07_power_law_tail(report):
    details, ok = [], True
    e = np.geomspace(1e2, 1e3, 50)
    for spec in SPECS:
        ev = solver.build_evaluator(spec, 20)
        lam0 = ev.lambdas[0]
        for y in (0.3, spec.y0, 0.95):
            f = solver.greens_function(ev, [y], e)[0]
            slope = np.polyfit(np.log(e), np.log(f), 1)[0]
            gap = abs(slope + lam0) / lam0
            ok &= gap <= 0.01
            details.append(f"{gap:.1e}")
    report("7 power-law tail slope", ok, "rel slope gaps " + ", ".join(details))


def test_c08_moments(report, evaluators_500):
    checks = [c for spec in SPECS for c in cf.moment_checks(spec, evaluators_500[spec])]
    try:
        ids.moment_series(3.0, solver.build_evaluator(ProblemSpec(0.0, 0.5), 5), 0.5)
        raised = False
    except DivergenceError:
        raised = True
    worst = max(c.error for c in checks)
    ok = all(c.passed for c in checks) and raised
    report("8 moments", ok, f"worst closed/series gap {worst:.2e}, beta=0 l=3 divergence raised: {raised}")


def test_c09_summation_formula(report, evaluators_500):
    checks = [c for spec in SPECS for c in cf.summation_checks(spec, evaluators_500[spec])]
    detail = "; ".join(f"{c.name} err={c.error:.2e}" for c in checks)
    report("9 summation formula", all(c.passed for c in checks), detail)


def test_c10_generating_functions(report):
    checks = cf.generating_checks()
    detail = "; ".join(f"{c.name}: {c.error:.1e}" for c in checks)
    report("10 generating functions", all(c.passed for c in checks), detail)


def test_c11_ode_and_branch_continuity(report):
    checks = cf.ode_checks(20)
    worst_ode = max(c.error for c in checks)
    y_lo = sf.Y_SWITCH
    y_hi = np.nextafter(sf.Y_SWITCH, 1.0)
    gaps = []
    for lam in (-0.5, 2.0, 4.2308, 17.5, 40.0):
        for fn in (eb.phi1, eb.phi2_scaled):
            lo, hi = fn(lam, y_lo), fn(lam, y_hi)
            gaps.append(abs(hi - lo) / abs(lo))
        y_ref = 1.0 - sf.Y_SWITCH
        star_lo = eb.phi1_star(lam, y_ref)
        star_hi = eb.phi1_star(lam, np.nextafter(y_ref, 0.0))
        gaps.append(abs(star_hi - star_lo) / abs(star_lo))
    worst_branch = max(gaps)
    ok = all(c.passed for c in checks) and worst_branch <= 1e-10
    report("11 ODE residuals and branch continuity", ok, f"ODE {worst_ode:.2e}, branch {worst_branch:.2e}")


def test_fig1_sweep_properties(report):
    y0s = np.linspace(0.02, 0.98, 25)
    betas = (0.4, 1.0, 2.0, 4.0)
    curves = np.array([[solver.find_eigenvalues(ProblemSpec(b, float(y0)), 1)[0] for y0 in y0s] for b in betas])
    peaks = np.argmax(curves, axis=1)
    double_valued = bool(np.all((peaks > 0) & (peaks < len(y0s) - 1)))
    monotone_beta = bool(np.all(np.diff(curves, axis=0) > 0))
    flat_beta0 = solver.find_eigenvalues(ProblemSpec(0.0, 0.3), 1)[0] == 4.0
    ok = double_valued and monotone_beta and flat_beta0
    report(
        "Fig 1 sweep",
        ok,
        f"interior maximum per beta: {double_valued}, monotone in beta: {monotone_beta}, beta=0 flat at 4: {flat_beta0}",
    )
