import pytest

from hypsector.specfun.kfunctions import intertwine_constant, line_model_norm_btilde
from hypsector.specfun.linemodel import (btilde_by_quadrature, f2ks, intertwine,
                                         intertwine_at_zero, pairing)


def test_f2ks_unit_modulus_factor():
    s = 0.7
    # |f| = (1 + x^2)^{-s}
    for x in (-3.0, 0.0, 0.5, 7.0):
        assert abs(f2ks(2, s, x)) == pytest.approx((1 + x * x) ** (-s), rel=1e-14)


def test_intertwine_k0_direct():
    import mpmath
    s = 0.75
    direct = 2 * mpmath.quad(lambda y: y ** (2 * s - 2) * (1 + y * y) ** (-s), [0, 1, mpmath.inf])
    got = intertwine_at_zero(0, s)
    assert got.real == pytest.approx(float(direct), rel=1e-8)
    assert got.real == pytest.approx(intertwine_constant(0, s), rel=1e-8)
    assert abs(got.imag) < 1e-10


@pytest.mark.parametrize("k", range(-4, 5))
@pytest.mark.parametrize("s", [0.6, 0.75])
def test_intertwine_constants(k, s):
    c = intertwine_constant(k, s)
    assert abs(intertwine_at_zero(k, s) - c * (-1) ** k) < 1e-7 * abs(c)
    assert btilde_by_quadrature(k, s) == pytest.approx(line_model_norm_btilde(k, s), rel=1e-7)


def test_pairing_integral_k2():
    k, s = 2, 0.7
    f = lambda x: f2ks(k, s, x)  # noqa: E731
    If = lambda x: intertwine(f, s, x)  # noqa: E731
    got = pairing(f, If)
    assert got.real == pytest.approx(line_model_norm_btilde(k, s), rel=1e-6)
