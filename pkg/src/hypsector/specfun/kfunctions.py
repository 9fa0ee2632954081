"""K-isotypic radial functions of the complementary series and their constants.

For integers n, k and s in (1/2, 1) the radial function is

    Phi_{2n,2k}(r) = (1 - r^2)^s r^{|n-k|} 2F1(s - eps k, s + eps n; 1 + |n-k|; r^2)

with eps = +1 when n >= k and -1 otherwise; r = tanh(t/2) is the disk radius
of a_t. All Gamma-ratio constants go through ``log_gamma`` with signs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .gamma import GammaPoleError, log_gamma_ratio
from .hyp import hyp2f1, hyp2f1_detailed


@dataclass(frozen=True)
class ReprParams:
    s: float
    n: int = 0
    k: int = 0

    def __post_init__(self):
        if not (0.5 < self.s < 1.0):
            raise ValueError(f"s = {self.s} must lie in (1/2, 1)")
        for name in ("n", "k"):
            v = getattr(self, name)
            if int(v) != v:
                raise ValueError(f"{name} must be an integer")
            object.__setattr__(self, name, int(v))

    @property
    def eps(self) -> int:
        return 1 if self.n >= self.k else -1

    @property
    def lam(self) -> float:
        return self.s * (1.0 - self.s)

    @property
    def order(self) -> int:
        return abs(self.n - self.k)

    def hyp_params(self) -> tuple[float, float, float]:
        e = self.eps
        return self.s - e * self.k, self.s + e * self.n, 1.0 + self.order

    def shifted(self, dn: int = 0, dk: int = 0) -> "ReprParams":
        return ReprParams(self.s, self.n + dn, self.k + dk)


def phi(params: ReprParams, r: float) -> float:
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r = {r} outside [0, 1)")
    w = (1.0 - r) * (1.0 + r)
    return _phi(params, r, w)


def phi_at_t(params: ReprParams, t: float) -> float:
    """Phi at a_t, with 1 - r^2 = sech^2(t/2) taken directly (no cancellation)."""
    t = float(t)
    r = math.tanh(t / 2)
    w = 1.0 / math.cosh(t / 2) ** 2
    return _phi(params, r, w)


def _phi(p: ReprParams, r: float, w: float) -> float:
    a, b, c = p.hyp_params()
    m = p.order
    if r == 0.0:
        return 1.0 if m == 0 else 0.0
    f = hyp2f1(a, b, c, r * r, one_minus_z=w)
    return w**p.s * r**m * f


def phi_method(params: ReprParams, r: float) -> str:
    a, b, c = params.hyp_params()
    return hyp2f1_detailed(a, b, c, r * r, one_minus_z=(1 - r) * (1 + r)).method


def asymptotic_constant(params: ReprParams) -> float:
    """Limit of e^{t(1-s)} Phi(a_t) as t -> infinity."""
    s, e = params.s, params.eps
    den = [s - e * params.k, s + e * params.n]
    if any(_pole(x) for x in den):
        return 0.0
    lv, sg = log_gamma_ratio([1 + params.order, 2 * s - 1], den)
    return sg * math.exp((1 - s) * math.log(4.0) + lv)


def _pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def ladder_norm_b(k: int, s: float) -> float:
    """b_{k,s} = 4^k Gamma(s+k) Gamma(1-s+k) / (Gamma(s) Gamma(1-s)), k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lv, sg = log_gamma_ratio([s + k, 1 - s + k], [s, 1 - s])
    return sg * math.exp(2 * k * math.log(2.0) + lv)


def intertwine_constant(k: int, s: float) -> float:
    """Scalar by which the intertwiner maps f_{2k,s} to f_{2k,1-s}."""
    if _pole(s - k) or _pole(s + k):
        raise GammaPoleError(f"s +/- k hits a pole (s={s}, k={k})")
    lv, sg = log_gamma_ratio([2 * s - 1], [s - k, s + k])
    sign = sg * (-1 if k % 2 else 1)
    return sign * math.exp((1 - s) * math.log(4.0) + math.log(math.pi) + lv)


def line_model_norm_btilde(k: int, s: float) -> float:
    """Squared norm of f_{2k,s} in the complementary-series inner product."""
    return math.pi * intertwine_constant(k, s)


def matrix_coefficient_constant(params: ReprParams) -> float:
    n, k, s, e = params.n, params.k, params.s, params.eps
    bt = line_model_norm_btilde(k, s) * line_model_norm_btilde(n, s)
    if _pole(s - e * n) or _pole(s + e * k):
        return 0.0
    lv, sg = log_gamma_ratio([2 * s - 1], [1 + params.order, s - e * n, s + e * k])
    sign = sg * (-1 if k % 2 else 1)
    return sign * math.exp((1 - s) * math.log(4.0) + 2 * math.log(math.pi) + lv) / math.sqrt(bt)


def matrix_coefficient(params: ReprParams, coords) -> complex:
    """<pi(g) v_{2k}, v_{2n}> for unit vectors, g given by its Cartan coordinates."""
    val = matrix_coefficient_constant(params) * phi_at_t(params, coords.t)
    return val * np.exp(2j * (params.n * coords.theta1 + params.k * coords.theta2))


def tempered_decay_bound(t, v_norm: float = 1.0, w_norm: float = 1.0,
                         theta: float | None = None):
    """Decay envelope for matrix coefficients.

    Tempered case: t e^{-t/2} |v||w|. With a spectral-gap parameter ``theta``
    the envelope is e^{-theta t} |v||w| instead.
    """
    t = np.asarray(t, dtype=float)
    env = np.exp(-theta * t) if theta is not None else t * np.exp(-t / 2)
    return env * v_norm * w_norm


def spherical_function(s: complex, t: float) -> complex:
    """Harish-Chandra spherical function (1/pi) int_0^pi (cosh t - sinh t cos x)^{-s} dx.

    Tanh-sinh quadrature, split where the integrand's peak at x = 0 (width
    ~e^{-t/2}) hands over to the slowly varying tail.
    """
    with mpmath.workdps(30):
        ch, sh = mpmath.cosh(t), mpmath.sinh(t)
        w = mpmath.exp(-mpmath.mpf(t) / 2)
        pts = [0] + [p for p in (w, 10 * w, 100 * w) if p < 1] + [1, mpmath.pi]
        val = mpmath.quad(lambda x: (ch - sh * mpmath.cos(x)) ** (-s), pts)
        return complex(val / mpmath.pi)
