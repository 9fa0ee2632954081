"""Gauss hypergeometric function 2F1(a, b; c; z) for real parameters and 0 <= z < 1.

Direct Taylor series for z <= 1/2 and the 1 - z connection formula above
that. A float series that loses too many digits to cancellation is re-summed
in mpmath multiprecision arithmetic. When c - a - b is an integer the
connection formula has a logarithmic limit; we then sum the original series
at high precision and report a tail bound instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .gamma import gamma_ratio

_EPS = 2.0**-52
_MAX_TERMS = 100_000


class HypergeometricError(ValueError):
    pass


@dataclass(frozen=True)
class HypResult:
    value: float
    method: str          # series | series-mp | connection | connection-mp | degenerate-series
    error_bound: float   # absolute, estimated


def _nonpos_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _near_int(x: float, tol: float = 1e-12) -> bool:
    return abs(x - round(x)) <= tol


def _series_float(a, b, c, z):
    term, total, absum = 1.0, 1.0, 1.0
    for j in range(_MAX_TERMS):
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z
        total += term
        absum += abs(term)
        if term == 0.0 or (abs(term) < 1e-17 * abs(total) and j > 2):
            break
    else:
        raise HypergeometricError("series did not converge")
    return total, absum


def _series_mp(a, b, c, z, dps=40, tol=None, as_mp=False):
    """Multiprecision 2F1 via mpmath; returns (value, error bound).

    mpmath sums the same hypergeometric series with its own fixed-point
    kernel (and handles the logarithmic c - a - b cases); the bound reflects
    the working precision, which mpmath raises internally on cancellation.
    """
    with mpmath.workdps(dps):
        v = mpmath.hyp2f1(a, b, c, z)
        if mpmath.im(v) != 0:
            raise HypergeometricError("complex value: z is outside the disk of convergence")
        v = mpmath.re(v)
        bound = abs(v) * mpmath.mpf(10) ** (-dps + 3)
        if tol is not None:
            bound = min(bound, abs(v) * mpmath.mpf(tol))
        return (v if as_mp else float(v)), float(bound)


def _series(a, b, c, z) -> HypResult:
    if z == 0.0:
        return HypResult(1.0, "series", 0.0)
    val, absum = _series_float(a, b, c, z)
    err = 8 * _EPS * absum
    if val != 0.0 and err <= 1e-13 * abs(val):
        return HypResult(val, "series", err)
    v, tail = _series_mp(a, b, c, z)
    return HypResult(v, "series-mp", tail + _EPS * abs(v))


def hyp2f1_detailed(a: float, b: float, c: float, z: float, *,
                    one_minus_z: float | None = None, method: str = "auto") -> HypResult:
    """2F1 with method tag and error estimate.

    ``one_minus_z`` may be supplied when 1 - z is known more accurately than z
    itself (for instance sech^2(t/2) when z = tanh^2(t/2)). ``method`` forces
    "series" or "connection"; "auto" switches at z = 1/2.
    """
    a, b, c = float(a), float(b), float(c)
    if _nonpos_int(c):
        raise HypergeometricError(f"c = {c:g} is a nonpositive integer")
    w = (1.0 - z) if one_minus_z is None else float(one_minus_z)
    z = float(z) if one_minus_z is None else 1.0 - w
    # z may round to 1.0 when 1 - z is supplied separately; w carries the information
    if not (0.0 <= z <= 1.0) or w <= 0.0 or w > 1.0:
        raise HypergeometricError(f"z = {z!r} outside [0, 1)")
    if _nonpos_int(a) or _nonpos_int(b) or method == "series" or (method == "auto" and z <= 0.5):
        return _series(a, b, c, z)
    d = c - a - b
    if _near_int(d):
        # logarithmic case: no stable two-term connection formula
        val, tail = _series_mp(a, b, c, z, dps=60, tol=1e-20)
        return HypResult(val, "degenerate-series", tail + _EPS * abs(val))
    r1 = _series(a, b, 1.0 - d, w)
    r2 = _series(c - a, c - b, 1.0 + d, w)
    g1 = gamma_ratio([c, d], [c - a, c - b])
    g2 = gamma_ratio([c, -d], [a, b])
    p = w**d
    t1, t2 = g1 * r1.value, g2 * p * r2.value
    val = t1 + t2
    err = (abs(g1) * r1.error_bound + abs(g2 * p) * r2.error_bound
           + 16 * _EPS * (abs(t1) + abs(t2)))
    if val != 0.0 and err > 1e-12 * abs(val):
        # the two branches cancel; redo both in multiprecision
        with mpmath.workdps(40):
            A, B, C, W = (mpmath.mpf(x) for x in (a, b, c, w))
            D = C - A - B
            s1, _ = _series_mp(A, B, 1 - D, W, as_mp=True)
            s2, _ = _series_mp(C - A, C - B, 1 + D, W, as_mp=True)
            v = (mpmath.gammaprod([C, D], [C - A, C - B]) * s1
                 + mpmath.gammaprod([C, -D], [A, B]) * W**D * s2)
        return HypResult(float(v), "connection-mp", err)
    return HypResult(val, "connection", err)


def hyp2f1(a: float, b: float, c: float, z: float, *, one_minus_z: float | None = None) -> float:
    return hyp2f1_detailed(a, b, c, z, one_minus_z=one_minus_z).value
