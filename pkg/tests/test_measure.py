import math

import mpmath
import numpy as np
import pytest

from hypsector.measure import (DivergentSeriesWarning, build_measure, c2n_from_mu,
                               estimate_delta_countfit, estimate_delta_poincare, export_csv,
                               forbidden_mass, fourier_coefficient, fourier_eigenfunction,
                               measure_from_atoms, mu_stability, poisson_eigenfunction, read_csv)
from hypsector.orbit import count_growth, enumerate_ball

GRID = np.logspace(3, 5, 11)


def test_countfit_exact():
    est = estimate_delta_countfit([(t, t ** 1.5) for t in GRID])
    assert est.delta_hat == pytest.approx(0.75, abs=1e-12)
    assert est.stderr < 1e-10


def test_countfit_perturbed():
    est = estimate_delta_countfit([(t, 3 * t ** 1.2 * (1 + 0.1 * t ** -0.3)) for t in GRID])
    assert abs(est.delta_hat - 0.6) < 0.01


def test_countfit_needs_two_decades():
    with pytest.raises(ValueError):
        estimate_delta_countfit([(t, t) for t in np.logspace(3, 4, 11)])


def test_poincare_cyclic_toy():
    t = 0.8 * np.arange(1, 400)
    assert estimate_delta_poincare(t, T_max=float(np.sqrt(2 * np.cosh(t[-1])))).delta_hat == 0.0


def test_poincare_synthetic():
    # norms drawn so that N(T) ~ T^{1.4}
    rng = np.random.default_rng(3)
    T_max = 1e5
    u = rng.random(2_000_000)
    norm = np.maximum(T_max * u ** (1 / 1.4), 1.5)
    t = np.arccosh(norm ** 2 / 2)
    assert abs(estimate_delta_poincare(t, T_max=T_max).delta_hat - 0.7) < 0.02


def test_measure_edge_cases(gamma4):
    assert build_measure(enumerate_ball(gamma4, 2), s=1.0).empty
    m = measure_from_atoms([0.3, 0.3], [2.0, 2.0], 0.7)
    assert len(m) == 1 and m.total_mass == pytest.approx(1.0)


def test_divergent_warning(ball_1e3):
    with pytest.warns(DivergentSeriesWarning):
        build_measure(ball_1e3, s=0.5, delta_hat=0.68)


def test_fourier_examples():
    m = measure_from_atoms([0.0], [1.0], 0.7)
    assert fourier_coefficient(m, 3) == pytest.approx(1.0)
    m = measure_from_atoms(np.linspace(0, math.pi, 10_000, endpoint=False), np.ones(10_000), 0.7)
    assert fourier_coefficient(m, 0) == pytest.approx(1.0)
    assert abs(fourier_coefficient(m, 1)) < 1e-3


def test_c2n_examples():
    assert c2n_from_mu(0.4 + 0.1j, 0, 0.7) == pytest.approx(0.4 + 0.1j)
    assert c2n_from_mu(1.0, 1, 0.75) == pytest.approx(0.75)
    mu = 0.2 + 0.1j
    want = mpmath.gamma(3.7) / (mpmath.gamma(0.7) * mpmath.gamma(4)) * mu
    assert c2n_from_mu(mu, 3, 0.7) == pytest.approx(complex(want), rel=1e-13)


def test_csv_roundtrip(ball_1e3, tmp_path):
    m = build_measure(ball_1e3, delta_hat=0.68)
    back = read_csv(export_csv(m, tmp_path / "mu.csv"))
    assert np.array_equal(back.angles, m.angles) and np.array_equal(back.weights, m.weights)
    assert back.s_used == m.s_used


def test_poisson_equals_fourier(ball_1e3):
    delta = 0.68
    m = build_measure(ball_1e3, delta_hat=delta)
    for r, th in ((0.3, 0.2), (0.6, 1.9)):
        p = poisson_eigenfunction(m, delta, r, th)
        f = fourier_eigenfunction(m, delta, r, th, nmax=80)
        assert f == pytest.approx(p, rel=1e-8)


@pytest.mark.slow
def test_gamma4_measure(ball_1e5):
    counts = count_growth(ball_1e5, GRID)
    cf = estimate_delta_countfit(counts)
    pc = estimate_delta_poincare(ball_1e5)
    assert abs(cf.delta_hat - pc.delta_hat) < 0.02
    m = build_measure(ball_1e5, delta_hat=cf.delta_hat)
    assert forbidden_mass(m, ball_1e5.group) == 0.0
    # Gamma_4 is invariant under x -> -x, so odd-index coefficients vanish by symmetry
    assert abs(fourier_coefficient(m, 1)) < 1e-6
    st = mu_stability(ball_1e5, 5e4, cf.delta_hat)
    assert st["max_abs_diff"] < 0.05
