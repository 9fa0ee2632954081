"""Log-log power-law fits."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FitResult:
    exponent: float
    constant: float
    residuals: tuple[float, ...]   # log(value) - fitted log(value)
    window: tuple[float, float]
    r_squared: float


def fit_power_law(records) -> FitResult:
    """Least squares of log(value) = log(C) + exponent * log(T) over (T, value) pairs."""
    T = np.array([r[0] for r in records], float)
    y = np.array([r[1] for r in records], float)
    if len(T) < 5:
        raise ValueError("need at least 5 points")
    if (T <= 0).any() or (y <= 0).any():
        raise ValueError("power-law fit needs strictly positive T and values (log of 0)")
    x, ly = np.log(T), np.log(y)
    slope, icpt = np.polyfit(x, ly, 1)
    resid = ly - (icpt + slope * x)
    sst = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 - float(resid @ resid) / sst if sst > 0 else 1.0
    return FitResult(float(slope), float(np.exp(icpt)), tuple(float(r) for r in resid),
                     (float(T.min()), float(T.max())), float(min(max(r2, 0.0), 1.0)))


def fit_window(records, lo: float, hi: float) -> FitResult:
    """Fit restricted to lo <= T <= hi."""
    return fit_power_law([r for r in records if lo * (1 - 1e-9) <= r[0] <= hi * (1 + 1e-9)])
