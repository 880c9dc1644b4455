"""Profile of the estimate constants A_{m,r}(theta) toward the sector edge.

Tabulates A and the multiplicity-free A~ on a theta grid approaching pi/2,
one CSV per (m, r) pair, for plotting the cos(theta)^{-...} blow-up.  Also
prints the measured/bound margin of the weighted kernel norms at each theta
so the slack in the moment-bound chain is visible.

Usage:
    python scripts/constant_profiles.py --n 1 --theta-max 1.55
"""
import argparse
import math

import numpy as np

from gwcommute.estimates import constant_A, constant_A_tilde, kernel_moment_bound_report
from gwcommute.multiindex import MultiIndex
from gwcommute.reporting import (
    config_hash,
    format_exponent,
    format_value,
    render_csv,
    write_atomic,
)


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--m-values", default="1,2")
    ap.add_argument("--r-values", default="1,2,inf")
    ap.add_argument("--theta-max", type=float, default=1.55)
    ap.add_argument("--steps", type=int, default=64)
    ap.add_argument("--points", type=int, default=2048)
    ap.add_argument("--half-width", type=float, default=16.0)
    ap.add_argument("--out-prefix", default="constants")
    return ap.parse_args()


def main():
    args = parse_args()
    if not args.theta_max < math.pi / 2.0:
        raise SystemExit("theta-max must stay below pi/2")
    thetas = np.linspace(0.0, args.theta_max, args.steps)
    m_values = [int(v) for v in args.m_values.split(",")]
    r_values = [math.inf if v.strip() == "inf" else float(v)
                for v in args.r_values.split(",")]
    tag = config_hash(repr(vars(args)))

    for m in m_values:
        for r in r_values:
            rows = [
                [format_value(float(t)),
                 format_value(constant_A(args.n, m, r, float(t))),
                 format_value(constant_A_tilde(args.n, m, r, float(t)))]
                for t in thetas
            ]
            path = f"{args.out_prefix}_m{m}_r{format_exponent(r)}.csv"
            write_atomic(path, render_csv(["theta", "A", "A_tilde"], rows, tag))
            print(f"m={m} r={format_exponent(r)}: "
                  f"A(0) = {constant_A(args.n, m, r, 0.0):.6g}, "
                  f"A({args.theta_max:g}) = "
                  f"{constant_A(args.n, m, r, args.theta_max):.6g} -> {path}")

    if args.n == 1:
        beta = MultiIndex((1,))
        for t in np.linspace(0.0, args.theta_max, 8):
            rep = kernel_moment_bound_report(beta, float(t), 1.0, args.points,
                                        args.half_width)
            print(f"theta={t:6.3f}: ||x G|| / bound = {rep.lhs / rep.rhs:.4f}")


if __name__ == "__main__":
    main()
