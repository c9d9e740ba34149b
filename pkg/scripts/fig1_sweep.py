"""Sweep the fundamental eigenvalue over injection position and absorption strength.

Writes lambda_0(y0) for several beta to a CSV and reports the location of
the maximum of each curve.
"""

import argparse
from pathlib import Path

import numpy as np

from pulsar_green.solver import ProblemSpec, find_eigenvalues


def sweep(betas, y0s):
    return np.array([[find_eigenvalues(ProblemSpec(b, float(y0)), 1)[0] for y0 in y0s] for b in betas])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--betas", type=float, nargs="+", default=[0.0, 0.4, 1.0, 2.0, 4.0])
    parser.add_argument("--points", type=int, default=99)
    parser.add_argument("--out", type=Path, default=Path("results/fig1_sweep.csv"))
    args = parser.parse_args()

    y0s = np.linspace(0.01, 0.99, args.points)
    curves = sweep(args.betas, y0s)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    header = "y0," + ",".join(f"lambda0_beta={b:g}" for b in args.betas)
    np.savetxt(args.out, np.column_stack([y0s, curves.T]), delimiter=",", header=header, comments="", fmt="%.11e")
    for beta, curve in zip(args.betas, curves):
        k = int(np.argmax(curve))
        print(f"beta={beta:g}: max lambda0 = {curve[k]:.6f} at y0 = {y0s[k]:.3f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
