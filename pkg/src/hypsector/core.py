"""Exact SL(2, Z) arithmetic and the Cartan (KA+K) coordinate map.

Conventions used throughout the package::

    k_theta = [[cos theta, sin theta], [-sin theta, cos theta]]
    a_t     = diag(exp(t/2), exp(-t/2))
    g       = +/- k_{theta1} a_t k_{theta2},   0 <= theta1, theta2 < pi

With this choice the disk image of g.i is tanh(t/2) * exp(2i theta1), so
theta1 is half the argument of (g.i - i)/(g.i + i).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PI = math.pi


def _canonical(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    for x in (a, b, c, d):
        if x != 0:
            if x < 0:
                return (-a, -b, -c, -d)
            break
    return (a, b, c, d)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Integer matrix [[a, b], [c, d]] of determinant one.

    The entries are the actual product of the generators; equality and
    hashing go through the +/- canonical form so that g and -g compare equal
    (we work in PSL(2, Z)). ``word`` lists signed generator ids: +j is the
    j-th generator (1-based), -j its inverse.
    """

    a: int
    b: int
    c: int
    d: int
    word: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if isinstance(v, (np.integer,)):
                object.__setattr__(self, name, int(v))
            elif not isinstance(getattr(self, name), int):
                raise TypeError(f"entry {name} must be an integer, got {v!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries} is not 1")

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return _canonical(self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GroupElement([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a,
                            tuple(-x for x in reversed(self.word)))

    def canonical(self) -> "GroupElement":
        return GroupElement(*self.key, word=self.word)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def is_identity(self) -> bool:
        return self.key == (1, 0, 0, 1)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 0, 0, 1)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Exact product g*h; the word is the concatenation of the two words."""
    return GroupElement(
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
        g.word + h.word,
    )


def frobenius_norm_sq(g: GroupElement) -> int:
    return g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d


@dataclass(frozen=True)
class CartanCoords:
    theta1: float
    t: float
    theta2: float
    degenerate: bool = False

    @property
    def r(self) -> float:
        return math.tanh(self.t / 2)


def k_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def a_matrix(t: float) -> np.ndarray:
    return np.diag([math.exp(t / 2), math.exp(-t / 2)])


def reconstruct(coords: CartanCoords) -> np.ndarray:
    return k_matrix(coords.theta1) @ a_matrix(coords.t) @ k_matrix(coords.theta2)


def _mod_pi(x: float) -> float:
    y = math.fmod(x, PI)
    if y < 0:
        y += PI
    if y >= PI:  # fmod(-tiny) + pi can round up to pi
        y = 0.0
    return y


def _as_entries(g) -> tuple:
    if isinstance(g, GroupElement):
        return g.entries
    m = np.asarray(g, dtype=float).reshape(2, 2)
    return (m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def cartan_decompose(g) -> CartanCoords:
    """Cartan coordinates (theta1, t, theta2) of g.

    ``g`` is a GroupElement or any real 2x2 array of determinant one. t solves
    ||g||^2 = 2 cosh t; theta1 is half the argument of the disk image of g.i;
    theta2 is read off from a_t^{-1} k_{theta1}^{-1} g, which lies in K.
    Elements of K are flagged ``degenerate`` and get theta2 = 0.
    """
    a, b, c, d = _as_entries(g)
    nsq = a * a + b * b + c * c + d * d
    if isinstance(g, GroupElement):
        is_k = nsq == 2
    else:
        is_k = nsq / 2 - 1 < 1e-14
    if is_k:
        return CartanCoords(_mod_pi(math.atan2(b, a)), 0.0, 0.0, degenerate=True)
    t = math.acosh(nsq / 2)
    # g.i = (ac + bd + i) / (c^2 + d^2)
    den = float(c * c + d * d)
    z = complex(float(a * c + b * d) / den, 1.0 / den)
    w = (z - 1j) / (z + 1j)
    theta1 = _mod_pi(0.5 * math.atan2(w.imag, w.real))
    m = a_matrix(-t) @ k_matrix(-theta1) @ np.array([[a, b], [c, d]], dtype=float)
    theta2 = _mod_pi(math.atan2(m[0, 1], m[0, 0]))
    return CartanCoords(theta1, t, theta2)


def disk_point(g) -> tuple[float, float, bool]:
    """(angle, radius, degenerate) of g.o in the disk; angle = theta1(g)."""
    cc = cartan_decompose(g)
    return cc.theta1, cc.r, cc.degenerate


def cartan_arrays(entries: np.ndarray):
    """Vectorized Cartan coordinates for an (N, 4) integer array of rows a, b, c, d.

    Uses the principal axes of g g^T and g^T g, whose entries are exact
    integers, so the angles stay accurate for large t. Returns
    (theta1, t, theta2, degenerate).
    """
    e = np.asarray(entries)
    if e.dtype == object:
        e = e.astype(np.float64)
    a, b, c, d = (e[:, i] for i in range(4))
    nsq = (a * a + b * b + c * c + d * d).astype(np.float64)
    x1 = (2 * (a * c + b * d)).astype(np.float64)
    y1 = (a * a + b * b - c * c - d * d).astype(np.float64)
    x2 = (2 * (a * b + c * d)).astype(np.float64)
    y2 = (a * a + c * c - b * b - d * d).astype(np.float64)
    degenerate = nsq <= 2.0
    t = np.arccosh(np.maximum(nsq / 2, 1.0))
    theta1 = np.mod(-0.5 * np.arctan2(x1, y1), PI)
    theta2 = np.mod(0.5 * np.arctan2(x2, y2), PI)
    if degenerate.any():
        theta1[degenerate] = np.mod(np.arctan2(e[degenerate, 1].astype(float),
                                               e[degenerate, 0].astype(float)), PI)
        theta2[degenerate] = 0.0
    # np.mod can return pi for tiny negative inputs
    theta1[theta1 >= PI] = 0.0
    theta2[theta2 >= PI] = 0.0
    return theta1, t, theta2, degenerate
