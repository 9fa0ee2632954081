"""How fast e^{t(1-s)} Phi(a_t) approaches its large-t constant.

For each (n, k, s) prints the relative error at t = 20 and the log-slope of
the error over t in [20, 40], next to -(2s - 1), the decay rate of the
second term in the large-t expansion.

    python scripts/asymptotic_rate.py
"""
import numpy as np

from hypsector.specfun.kfunctions import ReprParams
from hypsector.specfun.verify import ASYMPTOTIC_CASES, asymptotic_errors


def main():
    ts = np.linspace(20, 40, 11)
    print(" n  k    s   err(t=20)   slope    -(2s-1)")
    for n, k, s in ASYMPTOTIC_CASES:
        e = asymptotic_errors(ReprParams(s, n, k), ts)
        slope = np.polyfit(ts, np.log(e), 1)[0]
        print(f"{n:2d} {k:2d} {s:5.2f}  {e[0]:.3e}  {slope:7.4f}  {-(2 * s - 1):7.4f}")


if __name__ == "__main__":
    main()
