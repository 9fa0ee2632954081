"""Boundary measure built from orbit data, critical-exponent estimators, Fourier data."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .orbit import GroupPresentation, OrbitBall, forbidden_arcs
from .specfun.gamma import log_gamma_ratio
from .specfun.kfunctions import ReprParams, phi


class DivergentSeriesWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ExponentEstimate:
    delta_hat: float
    stderr: float
    method: str                      # "count-fit" | "poincare-abscissa"
    T_range: tuple[float, float]


def _linfit(x, y):
    """Least-squares slope, intercept, slope stderr and r^2."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    A = np.vstack([x, np.ones_like(x)]).T
    coef, res, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    n = len(x)
    sxx = float(((x - x.mean()) ** 2).sum())
    dof = max(n - 2, 1)
    stderr = math.sqrt(float(resid @ resid) / dof / sxx) if sxx > 0 else math.inf
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(resid @ resid) / sst if sst > 0 else 1.0
    return float(coef[0]), float(coef[1]), stderr, r2


def estimate_delta_countfit(counts) -> ExponentEstimate:
    """Half the log-log slope of N(T) against T."""
    T = np.array([c[0] for c in counts], float)
    N = np.array([c[1] for c in counts], float)
    if len(T) < 5:
        raise ValueError("need at least 5 grid points")
    if T.max() / T.min() < 100 * (1 - 1e-12):
        raise ValueError("grid must span at least two decades")
    if (N <= 0).any():
        raise ValueError("counts must be positive")
    slope, _, se, _ = _linfit(np.log(T), np.log(N))
    return ExponentEstimate(slope / 2, se / 2, "count-fit", (float(T.min()), float(T.max())))


def _shell_slope(log_norm, t, s, edges):
    w = np.exp(-s * t)
    idx = np.searchsorted(edges, log_norm, side="right") - 1
    ok = (idx >= 0) & (idx < len(edges) - 1)
    sums = np.bincount(idx[ok], weights=w[ok], minlength=len(edges) - 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    keep = sums > 0
    if keep.sum() < 3:
        raise ValueError("too few populated shells")
    slope, _, se, _ = _linfit(mids[keep], np.log(sums[keep]))
    return slope, se


def estimate_delta_poincare(data, T_max: float | None = None, *, decades: float = 2.0,
                            shells: int = 20, tol: float = 1e-6) -> ExponentEstimate:
    """Abscissa of convergence of sum exp(-s t(gamma)).

    The ball is cut into log-spaced norm shells over the top ``decades``; the
    shell sums of e^{-s t} behave like T^{2(delta - s)}, so delta is the s at
    which their fitted log-log slope vanishes. ``data`` is an OrbitBall or an
    array of t values (then ``T_max`` is required).
    """
    if isinstance(data, OrbitBall):
        t = np.asarray(data.t, float)
        log_norm = 0.5 * np.log(data.norm_sq.astype(float))
        T_max = data.T if T_max is None else T_max
    else:
        t = np.asarray(data, float)
        log_norm = 0.5 * np.log(2 * np.cosh(t))
        if T_max is None:
            raise ValueError("T_max required for raw t data")
    hi = math.log(T_max)
    edges = np.linspace(hi - decades * math.log(10), hi, shells + 1)
    f = lambda s: _shell_slope(log_norm, t, s, edges)[0]  # noqa: E731
    T_range = (float(math.exp(edges[0])), float(T_max))
    if f(0.0) <= 0:
        return ExponentEstimate(0.0, 0.0, "poincare-abscissa", T_range)
    lo, up = 0.0, 2.0
    while up - lo > tol:
        mid = 0.5 * (lo + up)
        if f(mid) > 0:
            lo = mid
        else:
            up = mid
    s = 0.5 * (lo + up)
    _, se = _shell_slope(log_norm, t, s, edges)
    return ExponentEstimate(s, se / 2, "poincare-abscissa", T_range)


@dataclass
class BoundaryMeasure:
    angles: np.ndarray
    weights: np.ndarray
    s_used: float
    T_used: float
    delta_hat: float | None = None
    normalized: bool = True
    flags: list = field(default_factory=list)

    def __len__(self):
        return len(self.angles)

    @property
    def atoms(self):
        return list(zip(self.angles.tolist(), self.weights.tolist()))

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def empty(self) -> bool:
        return len(self.angles) == 0


def measure_from_atoms(angles, t, s: float, *, T_used: float = math.inf,
                       delta_hat: float | None = None, normalize: bool = True) -> BoundaryMeasure:
    """Atoms e^{-s t} at the given angles; exactly coincident angles are merged."""
    angles = np.asarray(angles, float)
    w = np.exp(-s * np.asarray(t, float))
    flags = []
    if len(angles) == 0:
        return BoundaryMeasure(angles, w, s, T_used, delta_hat, False, ["empty"])
    uniq, inv = np.unique(angles, return_inverse=True)
    merged = np.bincount(inv, weights=w)
    if normalize:
        merged = merged / np.sum(merged)
    if delta_hat is not None and s <= delta_hat:
        flags.append("s<=delta_hat")
    return BoundaryMeasure(uniq, merged, s, T_used, delta_hat, normalize, flags)


def default_s(delta_hat: float, T_max: float) -> float:
    return delta_hat + 1.0 / math.log(T_max)


def build_measure(ball: OrbitBall, s: float | None = None, *, delta_hat: float | None = None,
                  t_min: float = 1.0) -> BoundaryMeasure:
    """Normalized orbit measure with atoms at theta1(gamma) for t(gamma) >= t_min.

    Without ``s`` the exponent s = delta_hat + 1/log T is used.
    """
    if s is None:
        if delta_hat is None:
            raise ValueError("give s or delta_hat")
        s = default_s(delta_hat, ball.T)
    if delta_hat is not None and s <= delta_hat:
        warnings.warn(f"s = {s:.4f} <= delta_hat = {delta_hat:.4f}: the series diverges, "
                      "truncation dominates", DivergentSeriesWarning, stacklevel=2)
    keep = (ball.t >= t_min) & ~ball.degenerate
    return measure_from_atoms(ball.theta1[keep], ball.t[keep], s, T_used=ball.T,
                              delta_hat=delta_hat)


def fourier_coefficient(m: BoundaryMeasure, n) -> complex | np.ndarray:
    """mu^(2n) = sum_j w_j e^{2 i n alpha_j}; ``n`` may be an array."""
    n_arr = np.atleast_1d(np.asarray(n))
    out = np.array([np.sum(m.weights * np.exp(2j * int(k) * m.angles)) for k in n_arr])
    return complex(out[0]) if np.ndim(n) == 0 else out


def c2n_factor(n: int, delta: float) -> float:
    """Gamma(delta + |n|) / (Gamma(delta) Gamma(1 + |n|))."""
    lv, sg = log_gamma_ratio([delta + abs(n)], [delta, 1 + abs(n)])
    return sg * math.exp(lv)


def c2n_from_mu(m, n: int, delta: float) -> complex:
    """Fourier coefficient c_{2n} of the base eigenfunction from the boundary measure.

    ``m`` is a BoundaryMeasure or directly the value mu^(-2n).
    """
    if not (0.5 < delta < 1):
        raise ValueError("delta must lie in (1/2, 1)")
    mu = fourier_coefficient(m, -n) if isinstance(m, BoundaryMeasure) else complex(m)
    return c2n_factor(n, delta) * mu


def forbidden_mass(m: BoundaryMeasure, group: GroupPresentation) -> float:
    total = 0.0
    for lo, hi in forbidden_arcs(group):
        sel = (m.angles > lo) & (m.angles < hi)
        total += float(np.sum(m.weights[sel]))
    return total


def poisson_eigenfunction(m: BoundaryMeasure, delta: float, r: float, theta: float) -> float:
    """int ((1 - r^2) / |r e^{2i theta} - e^{2i alpha}|^2)^delta dmu(alpha)."""
    z = r * np.exp(2j * theta)
    kern = (1 - r * r) / np.abs(z - np.exp(2j * m.angles)) ** 2
    return float(np.sum(m.weights * kern**delta))


def fourier_eigenfunction(m: BoundaryMeasure, delta: float, r: float, theta: float,
                          nmax: int = 60) -> float:
    """Truncated sum_n c_{2n} Phi_{2n,0}(r) e^{2in theta} with Phi at s = delta."""
    total = 0j
    for n in range(-nmax, nmax + 1):
        total += c2n_from_mu(m, n, delta) * phi(ReprParams(delta, n, 0), r) * np.exp(2j * n * theta)
    return total.real


def mu_stability(ball: OrbitBall, T_small: float, delta_hat: float, nmax: int = 4) -> dict:
    """mu^(2n) at T_small and at the ball's T; the difference diagnoses insufficient T."""
    small = build_measure(ball.restrict(T_small), delta_hat=delta_hat)
    big = build_measure(ball, delta_hat=delta_hat)
    ns = np.arange(-nmax, nmax + 1)
    a, b = fourier_coefficient(small, ns), fourier_coefficient(big, ns)
    return {"n": ns.tolist(), "mu_small": a, "mu_big": b, "max_abs_diff": float(np.abs(a - b).max())}


def export_csv(m: BoundaryMeasure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# s_used={m.s_used!r}\n# T_used={m.T_used!r}\n# delta_hat={m.delta_hat!r}\n")
        fh.write("angle,weight\n")
        for a, w in zip(m.angles.tolist(), m.weights.tolist()):
            fh.write(f"{a!r},{w!r}\n")
    return path


def read_csv(path) -> BoundaryMeasure:
    meta, rows = {}, []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key] = None if val == "None" else float(val)
            elif not line.startswith("angle"):
                a, w = line.strip().split(",")
                rows.append((float(a), float(w)))
    arr = np.array(rows, float).reshape(-1, 2)
    return BoundaryMeasure(arr[:, 0], arr[:, 1], meta["s_used"], meta["T_used"], meta["delta_hat"])
