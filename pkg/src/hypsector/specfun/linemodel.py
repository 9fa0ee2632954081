"""Line model of the complementary series: K-type vectors, intertwiner, pairing.

Quadratures use the substitution x = tan(u), which maps the line to
(-pi/2, pi/2) and turns the weight-2k vectors into pure phases; the kernel
singularity |x - y|^{2s-2} is handled by scipy's algebraic-weight rule.
"""
from __future__ import annotations

import cmath
import math
from typing import Callable

from scipy import integrate

_Q = dict(epsabs=1e-13, epsrel=1e-12, limit=500)


def f2ks(k: int, s: float, x: float) -> complex:
    """(1 + x^2)^{-s} e^{-2ik arg(x + i)}, principal branch of arg."""
    return (1 + x * x) ** (-s) * cmath.exp(-2j * k * cmath.phase(complex(x, 1.0)))


def _quad_complex(fn, a, b, **kw):
    opts = dict(_Q)
    opts.update(kw)
    re = integrate.quad(lambda u: fn(u).real, a, b, **opts)[0]
    im = integrate.quad(lambda u: fn(u).imag, a, b, **opts)[0]
    return complex(re, im)


def intertwine(f: Callable[[float], complex], s: float, x: float) -> complex:
    """(I f)(x) = int |x - y|^{2s-2} f(y) dy for f in the s-model.

    ``f`` must decay like |y|^{-2s}. After y = tan(v) the singular factor is
    |sin(u0 - v)|^{2s-2}, split at v = u0 and integrated with algebraic weights.
    """
    u0 = math.atan(x)
    alpha = 2 * s - 2
    cu0 = math.cos(u0)

    def smooth(v):
        # |x - y|^{2s-2} f(y) dy/dv with the |u0 - v|^{2s-2} factor removed
        d = u0 - v
        sinc = math.sin(d) / d if d != 0 else 1.0
        cv = math.cos(v)
        return (abs(sinc) ** alpha * (cu0 * cv) ** (-alpha)
                * f(math.tan(v)) / (cv * cv))

    lo, hi = -math.pi / 2, math.pi / 2
    left = _quad_complex(smooth, lo, u0, weight="alg", wvar=(0.0, alpha)) if u0 > lo else 0j
    right = _quad_complex(smooth, u0, hi, weight="alg", wvar=(alpha, 0.0)) if u0 < hi else 0j
    return left + right


def pairing(f: Callable[[float], complex], g: Callable[[float], complex]) -> complex:
    """int f(x) conj(g(x)) dx over the line, for f in V_s and g in V_{1-s}."""
    def integrand(u):
        c = math.cos(u)
        x = math.tan(u)
        return f(x) * g(x).conjugate() / (c * c)
    return _quad_complex(integrand, -math.pi / 2, math.pi / 2)


def intertwine_at_zero(k: int, s: float) -> complex:
    """(I f_{2k,s})(0) by quadrature; equals the intertwining constant times (-1)^k."""
    return intertwine(lambda y: f2ks(k, s, y), s, 0.0)


def btilde_by_quadrature(k: int, s: float) -> float:
    """<f_{2k,s}, I f_{2k,s}> as a double integral.

    In the angle variable it reduces to pi * int_0^pi cos(2kw) sin(w)^{2s-2} dw,
    with the endpoint singularities carried by the algebraic weight.
    """
    alpha = 2 * s - 2

    def smooth(w):
        if w == 0.0 or w == math.pi:
            return math.cos(2 * k * w) * (1 / math.pi) ** alpha
        return math.cos(2 * k * w) * (math.sin(w) / (w * (math.pi - w))) ** alpha

    val = integrate.quad(smooth, 0.0, math.pi, weight="alg", wvar=(alpha, alpha), **_Q)[0]
    return math.pi * val
