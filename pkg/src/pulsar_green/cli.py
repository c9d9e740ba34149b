"""Command-line front end.

    python -m pulsar_green eigen --beta 0.4 --y0 0.9 --count 5
    python -m pulsar_green spectrum --y 0.1 0.5 0.9 --format json
    python -m pulsar_green verify --suite orthogonality

Exit codes: 0 success, 1 a verification check failed, 2 bad input or a
computational error.
"""

import argparse
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import conformance, flow, identities, solver
from .errors import PulsarGreenError

ENV_TERMS = "PULSAR_GREEN_TERMS"
DEFAULT_BETA = 0.4
DEFAULT_Y0 = 0.9
SIGNIFICANT_DIGITS = 12

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_ERROR = 2


@dataclass
class RunConfig:
    command: str
    beta: float = DEFAULT_BETA
    y0: float = DEFAULT_Y0
    n_terms: int = solver.DEFAULT_TERMS
    output_format: str = "csv"
    emin: float = 1.0
    emax: float = 1e4
    points: int = 200
    y: list = field(default_factory=list)
    pi_free_units: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.emin < 1.0:
            raise solver.DomainError("emin must be >= 1 (energies below injection vanish)")
        if self.emax <= self.emin:
            raise solver.DomainError("emax must exceed emin")
        if self.points < 2:
            raise solver.DomainError("points must be >= 2")
        if self.n_terms < 1:
            raise solver.DomainError("the number of terms must be positive")

    @property
    def spec(self):
        return solver.ProblemSpec(self.beta, self.y0)

    def energy_grid(self):
        return np.geomspace(self.emin, self.emax, self.points)


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


def _fmt(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.{SIGNIFICANT_DIGITS - 1}e}"


def render(table, output_format, meta):
    if output_format == "json":
        data = {col: [_json_value(row[i]) for row in table.rows] for i, col in enumerate(table.columns)}
        return json.dumps({"meta": {**meta, **table.meta}, "data": data}, indent=2, sort_keys=True) + "\n"
    out = io.StringIO()
    out.write(",".join(table.columns) + "\n")
    for row in table.rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    return float(_fmt(value))


def cmd_eigen(cfg):
    if cfg.extra.get("sweep_y0"):
        betas = cfg.extra.get("betas") or [0.0, 0.4, 1.0, 2.0, 4.0]
        y0s = np.linspace(cfg.extra["y0_min"], cfg.extra["y0_max"], cfg.extra["y0_points"])
        rows = []
        for beta in betas:
            for y0 in y0s:
                lam0 = solver.find_eigenvalues(solver.ProblemSpec(beta, float(y0)), 1)[0]
                rows.append((float(beta), float(y0), lam0))
        return Table(["beta", "y0", "lambda_0"], rows)
    ev = solver.build_evaluator(cfg.spec, cfg.n_terms)
    rows = [(m.n, m.lambda_n, m.B_n, m.C_n, m.A_hat_n) for m in ev.modes]
    return Table(["n", "lambda_n", "B_n", "C_n", "A_hat_n"], rows)


def cmd_spectrum(cfg):
    ys = cfg.y or [cfg.y0]
    ev = solver.build_evaluator(cfg.spec, cfg.n_terms)
    energies = cfg.energy_grid()
    values = solver.greens_function(ev, ys, energies)
    if cfg.pi_free_units:
        values = values / np.pi
    columns = ["e_ratio"] + [f"f_hat_y={y:g}" for y in ys]
    rows = [(e, *values[:, k]) for k, e in enumerate(energies)]
    units = "Ndot0/(r0^2 eps0^3 v_c)" if cfg.pi_free_units else "Ndot0/(pi r0^2 eps0^3 v_c)"
    return Table(columns, rows, {"units": units})


def cmd_moments(cfg):
    ell = cfg.extra["ell"]
    ys = cfg.y or [0.2, 0.5, cfg.y0]
    series_terms = cfg.extra.get("series_terms") or identities.DEFAULT_SUM_TERMS
    ev = solver.build_evaluator(cfg.spec, series_terms)
    rows = []
    for y in ys:
        closed = identities.moment_closed(ell, cfg.spec, y)
        series = identities.moment_series(ell, ev, y)
        rows.append((y, closed, series, abs(closed - series) / abs(closed)))
    return Table(["y", "closed", "series", "rel_gap"], rows, {"ell": ell, "series_terms": series_terms})


def cmd_convolve(cfg):
    if cfg.extra.get("source"):
        source = solver.read_source(cfg.extra["source"])
    else:
        grid = np.geomspace(cfg.extra["source_emin"], cfg.extra["source_emax"], cfg.extra["source_points"])
        source = solver.planck_source(cfg.extra["temperature"], grid)
    ys = cfg.y or [cfg.y0]
    ev = solver.build_evaluator(cfg.spec, cfg.n_terms)
    energies = np.geomspace(source.energy[0] * cfg.emin, source.energy[-1] * cfg.emax, cfg.points)
    rows = []
    for eps in energies:
        rows.append((eps, *(solver.convolve_spectrum(ev, source, y, eps) for y in ys)))
    return Table(["epsilon"] + [f"f_y={y:g}" for y in ys], rows, {"units": "1/(pi r0^2 v_c)"})


def cmd_map(cfg):
    geom = flow.ColumnGeometry.from_pairs(cfg.extra["geometry"])
    v_c, x_st = flow.sonic_constants(geom)
    if cfg.extra.get("x"):
        xs = np.asarray(cfg.extra["x"], dtype=float)
        ys = flow.y_of_x(geom, xs)
    else:
        ys = np.asarray(cfg.y or [1.0], dtype=float)
        xs = flow.x_of_y(geom, ys)
    rows = [(x, y, flow.velocity(y), flow.velocity(y) * v_c) for x, y in zip(np.atleast_1d(xs), np.atleast_1d(ys))]
    meta = {
        "v_c": v_c,
        "x_st": x_st,
        "constraint_residual": flow.check_dynamical_constraint(geom),
    }
    return Table(["x_cm", "y", "v_over_vc", "v_cm_s"], rows, meta)


def cmd_verify(cfg):
    suites = cfg.extra.get("suites") or conformance.SUITES
    checks = conformance.run_suites(suites, perturb_lambda0=cfg.extra.get("perturb_lambda0", 0.0))
    rows = [(c.suite, c.name, c.error, c.tolerance, "pass" if c.passed else "FAIL") for c in checks]
    table = Table(["suite", "check", "error", "tolerance", "status"], rows)
    table.meta["passed"] = all(c.passed for c in checks)
    return table


COMMANDS = {
    "eigen": cmd_eigen,
    "spectrum": cmd_spectrum,
    "moments": cmd_moments,
    "verify": cmd_verify,
    "convolve": cmd_convolve,
    "map": cmd_map,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pulsar_green", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, problem=True):
        p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", help="write here instead of standard output")
        if problem:
            p.add_argument("--beta", type=float, default=DEFAULT_BETA)
            p.add_argument("--y0", type=float, default=DEFAULT_Y0)
            p.add_argument("--terms", type=int, help=f"expansion terms (env {ENV_TERMS}, default 20)")
        return p

    def energies(p):
        p.add_argument("--emin", type=float, default=1.0)
        p.add_argument("--emax", type=float, default=1e4)
        p.add_argument("--points", type=int, default=200)

    p = common(sub.add_parser("eigen", help="eigenvalue and coefficient table"))
    p.add_argument("--count", type=int, help="same as --terms")
    p.add_argument("--sweep-y0", action="store_true", help="lambda_0 against y0 for several beta")
    p.add_argument("--betas", type=float, nargs="+")
    p.add_argument("--y0-min", type=float, default=0.01)
    p.add_argument("--y0-max", type=float, default=0.99)
    p.add_argument("--y0-points", type=int, default=50)

    p = common(sub.add_parser("spectrum", help="Green's function against e/e0"))
    energies(p)
    p.add_argument("--y", type=float, nargs="+", default=[])
    p.add_argument("--pi-free", action="store_true", help="divide by pi (units without pi)")

    p = common(sub.add_parser("moments", help="energy moments, closed form and series"))
    p.add_argument("--ell", type=float, default=2.0)
    p.add_argument("--y", type=float, nargs="+", default=[])
    p.add_argument("--series-terms", type=int, help="terms in the series column (default 500)")

    p = common(sub.add_parser("verify", help="run the identity checks"), problem=False)
    p.add_argument("--suite", action="append", choices=conformance.SUITES, dest="suites")
    p.add_argument("--perturb-lambda0", type=float, default=0.0, help="shift lambda_0 (sensitivity test)")

    p = common(sub.add_parser("convolve", help="spectrum for a tabulated or blackbody source"))
    energies(p)
    p.set_defaults(emax=100.0, points=60)
    p.add_argument("--source", help="two-column file: epsilon0 j")
    p.add_argument("--temperature", type=float, default=1.0, help="blackbody source temperature")
    p.add_argument("--source-emin", type=float, default=0.01)
    p.add_argument("--source-emax", type=float, default=30.0)
    p.add_argument("--source-points", type=int, default=400)
    p.add_argument("--y", type=float, nargs="+", default=[])

    p = common(sub.add_parser("map", help="x <-> y coordinate map for a column geometry"), problem=False)
    p.add_argument("--geometry", nargs="+", required=True, metavar="KEY=VALUE",
                   help="r0 sigma_par sigma_perp J M_star R_star in cgs")
    p.add_argument("--y", type=float, nargs="+", default=[])
    p.add_argument("--x", type=float, nargs="+", default=[])
    return parser


def resolve_terms(flag_value, environ):
    if flag_value is not None:
        return flag_value
    env = environ.get(ENV_TERMS)
    if env:
        try:
            return int(env)
        except ValueError:
            raise solver.DomainError(f"{ENV_TERMS} must be an integer, got {env!r}") from None
    return solver.DEFAULT_TERMS


def config_from_args(args, environ=os.environ):
    skip = {"command", "output_format", "output", "beta", "y0", "terms", "count",
            "emin", "emax", "points", "y", "pi_free"}
    extra = {k: v for k, v in vars(args).items() if k not in skip}
    flag = getattr(args, "count", None) or getattr(args, "terms", None)
    return RunConfig(
        command=args.command,
        beta=getattr(args, "beta", DEFAULT_BETA),
        y0=getattr(args, "y0", DEFAULT_Y0),
        n_terms=resolve_terms(flag, environ),
        output_format=args.output_format,
        emin=getattr(args, "emin", 1.0),
        emax=getattr(args, "emax", 1e4),
        points=getattr(args, "points", 200),
        y=list(getattr(args, "y", []) or []),
        pi_free_units=getattr(args, "pi_free", False),
        extra=extra,
    )


def main(argv=None, environ=os.environ):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args, environ)
        table = COMMANDS[cfg.command](cfg)
        meta = asdict(cfg)
        text = render(table, cfg.output_format, meta)
    except (PulsarGreenError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "verify" and not table.meta["passed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK
