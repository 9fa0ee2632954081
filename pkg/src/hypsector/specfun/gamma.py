"""Signed log-Gamma and Gamma-ratio products."""
from __future__ import annotations

import math


class GammaPoleError(ValueError):
    """Gamma evaluated at a nonpositive integer."""


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def log_gamma(x: float, allow_negative: bool = True) -> tuple[float, int]:
    """Return (log|Gamma(x)|, sign of Gamma(x))."""
    x = float(x)
    if _is_pole(x):
        raise GammaPoleError(f"Gamma has a pole at x = {x:g}")
    if x > 0:
        return math.lgamma(x), 1
    if not allow_negative:
        raise ValueError(f"negative argument {x:g} not allowed")
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    # x - m is exact, so sin keeps full relative accuracy next to the poles
    m = round(x)
    s = math.sin(math.pi * (x - m)) * (-1 if m % 2 else 1)
    val = math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x)
    return val, 1 if s > 0 else -1


def gamma_ratio(num, den) -> float:
    """prod Gamma(num_i) / prod Gamma(den_j), computed in log space.

    Poles in the denominator make the ratio 0; poles in the numerator raise.
    """
    logv, sign = 0.0, 1
    for x in den:
        if _is_pole(float(x)):
            return 0.0
        lv, sg = log_gamma(x)
        logv -= lv
        sign *= sg
    for x in num:
        lv, sg = log_gamma(x)
        logv += lv
        sign *= sg
    return sign * math.exp(logv)


def log_gamma_ratio(num, den) -> tuple[float, int]:
    """Like gamma_ratio but returns (log|ratio|, sign); denominator poles raise."""
    logv, sign = 0.0, 1
    for x in num:
        lv, sg = log_gamma(x)
        logv, sign = logv + lv, sign * sg
    for x in den:
        lv, sg = log_gamma(x)
        logv, sign = logv - lv, sign * sg
    return logv, sign
