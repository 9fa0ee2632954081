import math

import numpy as np
import pytest

from hypsector.core import a_matrix, k_matrix
from hypsector.specfun.kfunctions import ReprParams, phi
from hypsector.specfun.operators import (adjoint_defect, apply_lowering, apply_raising,
                                         casimir_residual, derivative, ktype_function,
                                         ladder_coefficient, lower_radial, lowering_lie,
                                         origin_values_check, raise_radial, raising_lie)


def test_derivative_stencil():
    assert derivative(math.sin, 0.4) == pytest.approx(math.cos(0.4), rel=1e-12)
    assert derivative(math.exp, 0.3, order=2) == pytest.approx(math.exp(0.3), rel=1e-9)


def test_casimir_examples():
    assert casimir_residual(ReprParams(0.75, 0, 0), 0.5).relative < 1e-8
    assert casimir_residual(ReprParams(0.8, 2, -1), 0.3).relative < 1e-7


def test_casimir_on_constant_function():
    s = 0.7
    res = casimir_residual(ReprParams(s, 0, 0), 0.4, radial=lambda r: 2.5)
    assert abs(res.value) == pytest.approx(s * (1 - s) * 2.5, rel=1e-8)


@pytest.mark.parametrize("n,k", [(3, 1), (0, 2), (2, 2), (-1, -3)])
def test_ladder_pointwise(n, k):
    p = ReprParams(0.75, n, k)
    rad = lambda r: phi(p, r)  # noqa: E731
    for r in (0.2, 0.5, 0.8):
        up = raise_radial(rad, n, k, r)
        assert up == pytest.approx(ladder_coefficient(p, True) * phi(p.shifted(dk=1), r), rel=1e-6)
        dn = lower_radial(rad, n, k, r)
        assert dn == pytest.approx(ladder_coefficient(p, False) * phi(p.shifted(dk=-1), r), rel=1e-6)


def test_raising_coefficient_when_n_above_k():
    # R Phi_{n,k} = 2 (n - k) Phi_{n,k+1} for n > k
    assert ladder_coefficient(ReprParams(0.6, 3, 1), True) == 4.0


def test_lowering_after_raising_scalar():
    s, n, k = 0.7, 1, 1
    p = ReprParams(s, n, k)
    prod = ladder_coefficient(p, True) * ladder_coefficient(p.shifted(dk=1), False)
    assert prod == pytest.approx(-4 * (s + k) * (1 - s + k), rel=1e-13)


def test_zero_function():
    F = lambda th1, r, th2: 0.0  # noqa: E731
    assert apply_raising(F, (0.3, 0.5, 0.9)) == 0
    assert apply_lowering(F, (0.3, 0.5, 0.9)) == 0


def test_polar_and_lie_derivatives_agree():
    p = ReprParams(0.7, 1, 0)
    F = ktype_function(p)
    th1, t, th2 = 0.4, 1.2, 0.9
    g = k_matrix(th1) @ a_matrix(t) @ k_matrix(th2)
    r = math.tanh(t / 2)

    def G(m):
        from hypsector.core import cartan_decompose
        c = cartan_decompose(m)
        return F(c.theta1, c.r, c.theta2)

    assert raising_lie(G, g) == pytest.approx(apply_raising(F, (th1, r, th2)), rel=1e-6)
    assert lowering_lie(G, g) == pytest.approx(apply_lowering(F, (th1, r, th2)), rel=1e-6)


def test_adjointness():
    bump = lambda r: math.sin(math.pi * (r - 0.2) / 0.6) ** 4  # noqa: E731
    v = lambda r: bump(r) * (1 + r)  # noqa: E731
    w = lambda r: bump(r) * (2 - r * r)  # noqa: E731
    lhs, rhs = adjoint_defect(v, w, 1, 0)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_origin_values():
    ok, got, want = origin_values_check({0: 0.5}, 0, 0.7)
    assert ok and got == pytest.approx(0.5)
    ok, got, want = origin_values_check({0: 1.0, 1: 0.3, -1: 0.3}, 1, 0.7, tol=1e-6)
    assert ok and want == pytest.approx(0.6)
    ok, got, want = origin_values_check({0: 1.0, 1: 0.2, 2: 0.4, -1: 0.2, -2: 0.4}, 2, 0.7)
    assert ok
