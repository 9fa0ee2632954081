"""Counting statistics over orbit balls: harmonic sector sums, sector indicators,
affine-form windows and congruence-restricted vector windows."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .orbit import CongruenceContext, OrbitBall, stabilizer_filter_row


class RegimeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SectorSumRecord:
    n: int
    k: int
    T: float
    value: complex
    raw_count: int


def _phases(ball: OrbitBall):
    # degenerate elements carry theta1 = theta2 = 0 for summation purposes
    th1 = np.where(ball.degenerate, 0.0, ball.theta1)
    th2 = np.where(ball.degenerate, 0.0, ball.theta2)
    return th1, th2


def sector_sum(ball: OrbitBall, n: int, k: int) -> SectorSumRecord:
    """sum over the ball of e^{2in theta1} e^{2ik theta2}."""
    th1, th2 = _phases(ball)
    val = np.sum(np.exp(2j * (n * th1 + k * th2))) if len(ball) else 0j
    return SectorSumRecord(int(n), int(k), float(ball.T), complex(val), len(ball))


def sector_sums(ball: OrbitBall, harmonics) -> list[SectorSumRecord]:
    return [sector_sum(ball, n, k) for n, k in harmonics]


def growth_scan(ball: OrbitBall, T_grid, n: int, k: int) -> list[SectorSumRecord]:
    """Sector sums on sub-balls of one enumeration, for each T in the grid."""
    order = np.argsort(ball.norm_sq.astype(float), kind="stable")
    nsq = ball.norm_sq.astype(float)[order]
    th1, th2 = _phases(ball)
    terms = np.exp(2j * (n * th1 + k * th2))[order]
    out = []
    for T in T_grid:
        if T > ball.T:
            raise ValueError(f"T = {T} exceeds the enumerated radius {ball.T}")
        m = int(np.searchsorted(nsq, float(T) ** 2, side="left"))
        out.append(SectorSumRecord(int(n), int(k), float(T), complex(np.sum(terms[:m])), m))
    return out


def _in_interval(x, iv):
    lo, hi = iv
    return (x >= lo) & (x < hi)


def sector_indicator_count(ball: OrbitBall, psi=(0.0, math.pi), phi=(0.0, math.pi),
                           rho=(0.0, math.inf), *, approximate_rho: bool = False) -> int:
    """#{gamma : theta1 in psi, theta2 in phi, rho_lo <= rho < rho_hi}.

    With gamma = k_u a_rho k_v, rho = e^{t/2} exactly; ``approximate_rho``
    substitutes the Frobenius norm for rho instead.
    """
    for iv in (psi, phi):
        if not (0.0 <= iv[0] <= iv[1] <= math.pi):
            raise ValueError(f"interval {iv} not inside [0, pi]")
    th1, th2 = _phases(ball)
    r = np.sqrt(ball.norm_sq.astype(float)) if approximate_rho else np.exp(ball.t / 2)
    sel = _in_interval(th1, psi) & _in_interval(th2, phi) & _in_interval(r, rho)
    return int(sel.sum())


@dataclass(frozen=True)
class AffineQuery:
    """Parameters of a window count.

    mode "lower-bound": |<v gamma, w> - n_target| < N/K.
    mode "vector-window": |(c,d) gamma - y| < N/K and (c,d) gamma = y mod q,
    where (c,d) is ``v``.
    """

    v: tuple[int, int]
    N: float
    K: float
    T: float
    mode: str = "lower-bound"
    w: tuple[int, int] = (0, 1)
    n_target: int = 0
    y: tuple[int, int] = (0, 0)
    q: int = 1

    def __post_init__(self):
        if self.mode not in ("lower-bound", "vector-window"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.K <= 0 or self.N <= 0:
            raise ValueError("N and K must be positive")

    @property
    def radius(self) -> Fraction:
        return _as_fraction(self.N) / _as_fraction(self.K)

    def regime_warnings(self) -> list[str]:
        out = []
        N, K, T = self.N, self.K, self.T
        if self.mode == "lower-bound":
            v, w, n = np.hypot(*self.v), np.hypot(*self.w), abs(self.n_target)
            if not (N / K < n < N):
                out.append("N/K < |n| < N violated")
            if not (w < N / T):
                out.append("|w| < N/T violated")
            if not (v <= 1):
                out.append("|v| <= 1 violated (integer v has |v| >= 1)")
            if not (n < v * w * T):
                out.append("|n| < |v||w|T violated")
        else:
            y, cd = np.hypot(*self.y), np.hypot(*self.v)
            if not (y < N):
                out.append("|y| < N violated")
            if not (cd < N / T):
                out.append("|(c,d)| < N/T violated")
            if not (y < T * cd):
                out.append("|y| < T|(c,d)| violated")
        return out


def _as_fraction(x) -> Fraction:
    return Fraction(x) if isinstance(x, int) else Fraction(float(x))


def _warn(query: AffineQuery):
    for msg in query.regime_warnings():
        warnings.warn(msg, RegimeWarning, stacklevel=3)


def _exact(entries: np.ndarray) -> np.ndarray:
    return entries.astype(object)


def affine_values(ball: OrbitBall, v, w) -> np.ndarray:
    """Exact integers <v gamma, w> for every gamma in the ball."""
    e = _exact(ball.entries)
    a, b = int(v[0]), int(v[1])
    c, d = int(w[0]), int(w[1])
    row0 = a * e[:, 0] + b * e[:, 2]
    row1 = a * e[:, 1] + b * e[:, 3]
    return row0 * c + row1 * d


def affine_window_count(ball: OrbitBall, query: AffineQuery) -> int:
    if query.mode != "lower-bound":
        raise ValueError("affine_window_count needs mode 'lower-bound'")
    _warn(query)
    vals = affine_values(ball, query.v, query.w)
    R = query.radius
    diff = np.abs(vals - int(query.n_target))
    # |x| < p/q  <=>  q|x| < p, all in integers
    return int(np.count_nonzero(diff * R.denominator < R.numerator))


def row_images(ball: OrbitBall, row) -> np.ndarray:
    """Exact (c,d) gamma for every gamma, shape (len, 2), object dtype."""
    e = _exact(ball.entries)
    c, d = int(row[0]), int(row[1])
    return np.stack([c * e[:, 0] + d * e[:, 2], c * e[:, 1] + d * e[:, 3]], axis=1)


def vector_window_mask(ball: OrbitBall, query: AffineQuery) -> np.ndarray:
    img = row_images(ball, query.v)
    dx = img[:, 0] - int(query.y[0])
    dy = img[:, 1] - int(query.y[1])
    R = query.radius
    inside = (dx * dx + dy * dy) * R.denominator**2 < R.numerator**2
    if query.q > 1:
        q = query.q
        cong = ((img[:, 0] - int(query.y[0])) % q == 0) & ((img[:, 1] - int(query.y[1])) % q == 0)
        inside = inside & cong
    return inside.astype(bool)


def vector_window_count(ball: OrbitBall, query: AffineQuery, ctx: CongruenceContext | None = None) -> int:
    """Count with the Euclidean window and the congruence (c,d) gamma = y mod q.

    When a CongruenceContext is given the congruence side goes through the
    stabilizer partition of the ball instead of direct reduction.
    """
    if query.mode != "vector-window":
        raise ValueError("vector_window_count needs mode 'vector-window'")
    _warn(query)
    if ctx is None or query.q == 1:
        return int(vector_window_mask(ball, query).sum())
    if ctx.q != query.q:
        raise ValueError("context modulus differs from the query modulus")
    cells = stabilizer_filter_row(ball, ctx, query.v)
    key = (int(query.y[0]) % query.q, int(query.y[1]) % query.q)
    idx = cells.get(key)
    if idx is None or len(idx) == 0:
        return 0
    plain = AffineQuery(query.v, query.N, query.K, query.T, "vector-window", y=query.y, q=1)
    return int(vector_window_mask(ball.subset(_index_mask(len(ball), idx)), plain).sum())


def _index_mask(n, idx):
    m = np.zeros(n, bool)
    m[idx] = True
    return m


def coset_sector_sums(ball: OrbitBall, ctx: CongruenceContext, n: int, k: int) -> np.ndarray:
    """Sector sum restricted to each coset gamma0 Gamma(q); indexed by coset id."""
    th1, th2 = _phases(ball)
    terms = np.exp(2j * (n * th1 + k * th2))
    ids = ctx.coset_ids(ball)
    return (np.bincount(ids, weights=terms.real, minlength=ctx.index)
            + 1j * np.bincount(ids, weights=terms.imag, minlength=ctx.index))
