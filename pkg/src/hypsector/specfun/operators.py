"""Ladder and Casimir operators in polar coordinates (theta1, r, theta2).

With r = tanh(t/2) the raising and lowering operators read

    R = e^{2i theta2} ( -i (1-r^2)/(2r) d_theta1 + (1-r^2) d_r + i (1+r^2)/(2r) d_theta2 )
    L = e^{-2i theta2} ( i (1-r^2)/(2r) d_theta1 + (1-r^2) d_r - i (1+r^2)/(2r) d_theta2 )

and coincide with the right-invariant vector fields of H +/- i(E + F).
The Casimir is normalized so that it acts on the s-representation by -s(1-s);
the radial ODE residual is therefore (C + s(1-s)) Phi.

Derivatives use 5-point central differences with one Richardson step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, linalg

from .kfunctions import ReprParams, phi

H_STEP = 1e-4        # first derivatives, radians and radius
H_STEP_2ND = 1e-3    # second derivatives: rounding error scales as eps/h^2

_H = np.array([[1.0, 0.0], [0.0, -1.0]])
_E = np.array([[0.0, 1.0], [0.0, 0.0]])
_F = np.array([[0.0, 0.0], [1.0, 0.0]])


def _d1(f, x, h):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _d2(f, x, h):
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


def derivative(f: Callable, x: float, order: int = 1, h: float | None = None):
    """Richardson-extrapolated 5-point central difference of order 1 or 2."""
    if order == 1:
        h = H_STEP if h is None else h
        d = _d1
    elif order == 2:
        h = H_STEP_2ND if h is None else h
        d = _d2
    else:
        raise ValueError("order must be 1 or 2")
    coarse, fine = d(f, x, h), d(f, x, h / 2)
    return (16 * fine - coarse) / 15


# ---------------------------------------------------------------- polar forms

def _partials(F, point, h):
    th1, r, th2 = point
    d1 = derivative(lambda u: F(u, r, th2), th1, h=h)
    dr = derivative(lambda u: F(th1, u, th2), r, h=h)
    d2 = derivative(lambda u: F(th1, r, u), th2, h=h)
    return d1, dr, d2


def apply_raising(F: Callable, point, h: float | None = None) -> complex:
    """R F at point = (theta1, r, theta2); F is any smooth function of these."""
    th1, r, th2 = point
    d1, dr, d2 = _partials(F, point, h)
    w = 1 - r * r
    return np.exp(2j * th2) * (-1j * w / (2 * r) * d1 + w * dr + 1j * (1 + r * r) / (2 * r) * d2)


def apply_lowering(F: Callable, point, h: float | None = None) -> complex:
    th1, r, th2 = point
    d1, dr, d2 = _partials(F, point, h)
    w = 1 - r * r
    return np.exp(-2j * th2) * (1j * w / (2 * r) * d1 + w * dr - 1j * (1 + r * r) / (2 * r) * d2)


def ktype_function(params: ReprParams, radial: Callable | None = None) -> Callable:
    """theta1, r, theta2 -> radial(r) e^{2i n theta1} e^{2i k theta2}."""
    rad = radial if radial is not None else (lambda r: phi(params, r))
    n, k = params.n, params.k
    return lambda th1, r, th2: rad(r) * np.exp(2j * (n * th1 + k * th2))


# exact-phase versions: K-types as (radial part, n, k)

def raise_radial(radial: Callable, n: int, k: int, r: float, h: float | None = None) -> float:
    """Radial part of R(radial e^{2in theta1} e^{2ik theta2}); result has weights (n, k+1)."""
    w = 1 - r * r
    return w * derivative(radial, r, h=h) + (w * n - (1 + r * r) * k) / r * radial(r)


def lower_radial(radial: Callable, n: int, k: int, r: float, h: float | None = None) -> float:
    w = 1 - r * r
    return w * derivative(radial, r, h=h) + (-w * n + (1 + r * r) * k) / r * radial(r)


def ladder_coefficient(params: ReprParams, raising: bool) -> float:
    """Scalar c with R Phi_{2n,2k} = c Phi_{2n,2k+2} (or L with 2k-2)."""
    s, n, k = params.s, params.n, params.k
    if raising:
        if n > k:
            return 2.0 * (n - k)
        return -2.0 * (s + k) * (1 - s + k) / (1 + k - n)
    if n < k:
        return 2.0 * (k - n)
    return 2.0 * (s - k) * (s + k - 1) / (1 + n - k)


# ---------------------------------------------------------------- Casimir ODE

@dataclass(frozen=True)
class Residual:
    value: float   # |(C + s(1-s)) F| at r
    scale: float   # sum of absolute values of the individual terms

    @property
    def relative(self) -> float:
        return self.value / self.scale if self.scale > 0 else self.value


def casimir_terms(radial: Callable, n: int, k: int, s: float, r: float):
    """Individual terms of (C + s(1-s)) applied to radial(r) e^{2in th1} e^{2ik th2}.

    C = (L R + 4k(k+1)) / 4 on the weight-(n, k) component.
    """
    f = radial(r)
    fp = derivative(radial, r)
    fpp = derivative(radial, r, order=2)
    w = 1 - r * r
    p = (n - k) / r - (n + k) * r
    dp = w * (-(n - k) / (r * r) - (n + k))
    q = (k + 1 - n) / r + (n + k + 1) * r
    return [
        w * w * fpp / 4,
        (-2 * r * w + w * (1 + r * r) / r) * fp / 4,
        (dp + q * p + 4 * k * (k + 1)) * f / 4,
        s * (1 - s) * f,
    ]


def casimir_residual(params: ReprParams, r: float, radial: Callable | None = None) -> Residual:
    rad = radial if radial is not None else (lambda x: phi(params, x))
    terms = casimir_terms(rad, params.n, params.k, params.s, r)
    return Residual(abs(sum(terms)), sum(abs(x) for x in terms))


# ---------------------------------------------------------------- group-level oracle

def lie_derivative(F: Callable, g: np.ndarray, X: np.ndarray, h: float | None = None) -> complex:
    """d/de F(g exp(e X)) at e = 0, F a function on 2x2 real matrices."""
    return derivative(lambda e: F(g @ linalg.expm(e * X)), 0.0, h=h)


def raising_lie(F: Callable, g: np.ndarray, h: float | None = None) -> complex:
    return lie_derivative(F, g, _H, h) + 1j * lie_derivative(F, g, _E + _F, h)


def lowering_lie(F: Callable, g: np.ndarray, h: float | None = None) -> complex:
    return lie_derivative(F, g, _H, h) - 1j * lie_derivative(F, g, _E + _F, h)


def _second_lie(F, g, X, Y, h):
    """XY F(g) = d^2/da db F(g exp(aX) exp(bY)) at 0."""
    return derivative(lambda a: derivative(lambda b: F(g @ linalg.expm(a * X) @ linalg.expm(b * Y)),
                                           0.0, h=h), 0.0, h=h)


def raising_power_lie(F: Callable, g: np.ndarray, k: int, h: float = 1e-3) -> complex:
    """R^k F(g) for k in {0, 1, 2} through right-invariant vector fields."""
    if k == 0:
        return complex(F(g))
    if k == 1:
        return raising_lie(F, g, h)
    if k == 2:
        E = _E + _F
        return (_second_lie(F, g, _H, _H, h) - _second_lie(F, g, E, E, h)
                + 1j * (_second_lie(F, g, _H, E, h) + _second_lie(F, g, E, _H, h)))
    raise ValueError("only k <= 2 is supported")


def fourier_model(coeffs: dict, s: float) -> Callable:
    """g -> sum_n c_{2n} Phi_{2n,0}(r(g)) e^{2in theta1(g)}.

    Written through the disk point w = r e^{2i theta1} of g.i, so it is smooth at
    the identity where the polar coordinates degenerate.
    """
    from .hyp import hyp2f1

    def F(g):
        a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
        den = c * c + d * d
        z = complex((a * c + b * d) / den, 1.0 / den)
        wpt = (z - 1j) / (z + 1j)
        rr = abs(wpt) ** 2
        total = 0j
        for n, cn in coeffs.items():
            m = abs(n)
            params = ReprParams(s, n, 0)
            aa, bb, cc = params.hyp_params()
            mono = wpt**n if n >= 0 else wpt.conjugate() ** m
            total += cn * (1 - rr) ** s * mono * hyp2f1(aa, bb, cc, rr)
        return total

    return F


def origin_values_check(coeffs: dict, k: int, s: float, tol: float = 1e-4) -> tuple[bool, complex, complex]:
    """Compare R^k v0(e) with c_{2k} 2^k k! for the truncated Fourier model v0."""
    F = fourier_model(coeffs, s)
    got = raising_power_lie(F, np.eye(2), k)
    want = coeffs.get(k, 0.0) * 2**k * math.factorial(k)
    return abs(got - want) <= tol * max(1.0, abs(want)), got, want


# ---------------------------------------------------------------- adjointness

def haar_pairing(f: Callable, g: Callable, r_lo: float, r_hi: float) -> float:
    """int f(r) g(r) dmu over the K-type angular torus, Haar density 4r/(1-r^2)^2 dr dth1 dth2."""
    val, _ = integrate.quad(lambda r: f(r) * g(r) * 4 * r / (1 - r * r) ** 2, r_lo, r_hi,
                            epsabs=1e-14, epsrel=1e-12, limit=400)
    return math.pi**2 * val


def adjoint_defect(v: Callable, w: Callable, n: int, k: int, support=(0.2, 0.8)) -> tuple[float, float]:
    """<R v, w> and -<v, L w> for real radial v (weight (n, k)) and w (weight (n, k+1))."""
    lo, hi = support
    lhs = haar_pairing(lambda r: raise_radial(v, n, k, r), w, lo, hi)
    rhs = -haar_pairing(v, lambda r: lower_radial(w, n, k + 1, r), lo, hi)
    return lhs, rhs
