"""Orbit growth and harmonic sector sums of Gamma_c on a log grid of T.

Prints N(T), the local exponent between neighbouring grid points, and the
normalized sector sums value(n,k)/value(0,0) for a few harmonics.

    python scripts/growth_scan.py --c 4 --T 1e5
"""
import argparse

import numpy as np

from hypsector.fitting import fit_power_law
from hypsector.orbit import enumerate_ball, gamma_c
from hypsector.sectors import growth_scan

HARMONICS = [(1, 0), (1, 1), (2, 0), (2, 2)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--c", type=int, default=4)
    ap.add_argument("--T", type=float, default=1e5)
    ap.add_argument("--points", type=int, default=11)
    args = ap.parse_args()

    ball = enumerate_ball(gamma_c(args.c), args.T)
    grid = np.logspace(np.log10(args.T) - 2, np.log10(args.T), args.points)
    base = growth_scan(ball, grid, 0, 0)
    rows = {nk: growth_scan(ball, grid, *nk) for nk in HARMONICS}

    print("T           N(T)      local 2*delta  " + "  ".join(f"ratio{nk}" for nk in HARMONICS))
    prev = None
    for i, rec in enumerate(base):
        local = "" if prev is None else f"{np.log(rec.raw_count / prev.raw_count) / np.log(rec.T / prev.T):.4f}"
        ratios = "  ".join(f"{(rows[nk][i].value / rec.value).real:+.4f}" for nk in HARMONICS)
        print(f"{rec.T:<11.4g} {rec.raw_count:<9d} {local:<14} {ratios}")
        prev = rec
    fit = fit_power_law([(r.T, r.raw_count) for r in base])
    print(f"fitted N(T) ~ {fit.constant:.4g} T^{fit.exponent:.4f}  (delta ~ {fit.exponent / 2:.4f}, r2 {fit.r_squared:.6f})")


if __name__ == "__main__":
    main()
