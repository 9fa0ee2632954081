"""Coset counts of Gamma_c in gamma0 Gamma(q) as T grows.

Prints, for each T, the largest |count - N/[Gamma:Gamma(q)]| in units of
sqrt(N) and the max/mean and min/mean count ratios. A deviation growing like
a power of T larger than 1/2 points at a small exceptional eigenvalue at level q.

    python scripts/coset_drift.py --c 4 --q 3 --T 1e5
"""
import argparse
import math

import numpy as np

from hypsector.orbit import CongruenceContext, coset_counts, enumerate_ball, gamma_c


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--c", type=int, default=4)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--T", type=float, default=1e5)
    args = ap.parse_args()

    grp = gamma_c(args.c)
    ball = enumerate_ball(grp, args.T)
    ctx = CongruenceContext(grp, args.q)
    print(f"[Gamma:Gamma({args.q})] = {ctx.index}")
    print("T          N         max dev/sqrtN   max/mean  min/mean")
    for T in np.logspace(2, math.log10(args.T), 7):
        sub = ball.restrict(float(T))
        counts = coset_counts(sub, ctx)
        N = len(sub)
        mean = N / ctx.index
        dev = np.abs(counts - mean).max() / math.sqrt(N)
        print(f"{T:<10.4g} {N:<9d} {dev:<15.2f} {counts.max() / mean:<9.3f} {counts.min() / mean:.3f}")


if __name__ == "__main__":
    main()
