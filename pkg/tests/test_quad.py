import math

import numpy as np
import pytest

from jacobladder.bessel import j0, j1, j1_zeros
from jacobladder.errors import (BracketError, IntegrandNaNError, NonMonotoneError,
                                OrderingError, QuadratureError)
from jacobladder.gram import gram_point
from jacobladder.quad import gk15, integrate, invert_monotone
from jacobladder.rs_theta_zeta import theta


def test_sin_over_half_period():
    q = integrate(np.sin, 0.0, math.pi, rel_tol=1e-13)
    assert abs(q.value - 2.0) < 1e-12
    assert q.error_estimate < 1e-12


def test_j1_to_first_zero():
    mu1 = j1_zeros(1).mu(1)
    q = integrate(j1, 0.0, mu1)
    assert abs(q.value - (1 - j0(mu1))) < 1e-10


def test_empty_interval():
    q = integrate(np.cos, 3.0, 3.0)
    assert (q.value, q.error_estimate) == (0.0, 0.0)


def test_reversed_limits_rejected():
    with pytest.raises(OrderingError):
        integrate(np.exp, 1.0, 0.0)


def test_kronrod_rule_exact_for_degree_22():
    value, err, _ = gk15(lambda x: x ** 22, np.array([0.0]), np.array([1.0]))
    assert value[0] == pytest.approx(1 / 23, rel=1e-14)


def test_wavelength_hint_limits_initial_panels():
    q = integrate(lambda x: np.cos(50 * x), 0.0, 10.0, rel_tol=1e-10,
                  min_wavelength_hint=2 * math.pi / 50)
    assert q.panels >= 10.0 / (math.pi / 50)
    assert abs(q.value - math.sin(500) / 50) < 1e-10


def test_error_estimate_is_honest_on_oscillatory():
    f = lambda x: np.cos(x * x)
    q = integrate(f, 0.0, 30.0, rel_tol=1e-9, min_wavelength_hint=0.2)
    ref = integrate(f, 0.0, 30.0, rel_tol=1e-13, min_wavelength_hint=0.05)
    assert abs(q.value - ref.value) <= max(q.error_estimate, 1e-13) * 10


def test_nan_integrand():
    with pytest.raises(IntegrandNaNError):
        integrate(lambda x: np.where(x > 0.5, np.nan, x), 0.0, 1.0)


def test_budget_exhaustion_carries_estimate():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(1 / x), 1e-9, 1.0, rel_tol=1e-14, max_evaluations=3000)
    assert info.value.result is not None


def test_invert_identity():
    assert invert_monotone(lambda x: x, 5.0, 0.0, 10.0) == pytest.approx(5.0, abs=1e-13)


def test_invert_decreasing():
    x = invert_monotone(lambda x: -x ** 3, -8.0, 0.0, 5.0)
    assert x == pytest.approx(2.0, rel=1e-13)


def test_invert_theta_reproduces_gram_point():
    nu = 250
    g = gram_point(nu)
    x = invert_monotone(lambda t: theta(t).theta, math.pi * nu, g.t - 1, g.t + 1)
    assert x == pytest.approx(g.t, abs=1e-9)


def test_invert_bracket_violation():
    with pytest.raises(BracketError):
        invert_monotone(lambda x: x, 20.0, 0.0, 10.0)


def test_invert_non_monotone_detected():
    with pytest.raises(NonMonotoneError):
        invert_monotone(lambda x: x + 3 * np.sin(x), 5.0, 0.0, 10.0)


def test_invert_ladder_matches_table_inverse(ladder1):
    t_nu = gram_point(300).t
    lo, hi = ladder1.t_min, ladder1.t_max
    x = invert_monotone(ladder1.value, t_nu, lo, hi, dg=ladder1.derivative)
    assert abs(x - float(ladder1.inverse(t_nu))) <= 1e-9
