import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypsector.fitting import fit_power_law, fit_window

T = np.logspace(3, 5, 11)


def test_exact_power_law():
    r = fit_power_law([(t, 7 * t ** 1.4) for t in T])
    assert r.exponent == pytest.approx(1.4, abs=1e-12)
    assert r.constant == pytest.approx(7, rel=1e-10)
    assert r.r_squared == pytest.approx(1.0)


def test_perturbed_power_law():
    r = fit_power_law([(t, t ** 1.4 * (1 + t ** -0.5)) for t in T])
    assert abs(r.exponent - 1.4) < 0.02


def test_zero_series_rejected():
    with pytest.raises(ValueError, match="log"):
        fit_power_law([(t, 0.0) for t in T])


def test_too_few_points():
    with pytest.raises(ValueError):
        fit_power_law([(t, t) for t in T[:3]])


def test_window():
    recs = [(t, t ** 2 if t < 1e4 else 5 * t ** 1.5) for t in T]
    assert fit_window(recs, 1e4, 1e5).exponent == pytest.approx(1.5, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(0.01, 100.0))
def test_recovers_any_exponent(alpha, c):
    r = fit_power_law([(t, c * t ** alpha) for t in T])
    assert r.exponent == pytest.approx(alpha, abs=1e-9)
    assert r.constant == pytest.approx(c, rel=1e-7)
