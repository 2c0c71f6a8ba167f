import math

import mpmath as mp
import numpy as np
import pytest

from conftest import read_fixture
from jacobladder.errors import AccuracyUnreachableError, DomainError
from jacobladder.rs_theta_zeta import (EvalAccuracy, hardy_z, method_floor, theta, theta_array,
                                       zeta_abs_sq)

mp.mp.dps = 30


def mp_theta(t):
    t = mp.mpf(t)
    return float(mp.im(mp.loggamma(0.25 + 0.5j * t)) - t / 2 * mp.log(mp.pi))


def theta_tol(value):
    # theta is O(t log t); past t ~ 1e5 its own ulp exceeds 1e-10
    return max(1e-10, 4 * math.ulp(value))


def test_theta_at_zero():
    assert theta(0.0).theta == 0.0


def test_theta_zero_crossing():
    t0 = float(mp.findroot(lambda t: mp.im(mp.loggamma(0.25 + 0.5j * t)) - t / 2 * mp.log(mp.pi),
                           17.8))
    assert abs(theta(t0).theta) < 1e-12
    assert theta(t0 - 1e-3).theta < 0 < theta(t0 + 1e-3).theta


def test_theta_asymptotic_at_1000():
    t = 1000.0
    approx = t / 2 * math.log(t / (2 * math.pi)) - t / 2 - math.pi / 8
    assert abs(theta(t).theta - approx) < 1e-4


@pytest.mark.parametrize("t", [0.5, 3.0, 9.99, 10.0, 10.01, 37.2, 250.0, 4321.5, 9.9e4, 1e6])
def test_theta_against_mpmath(t):
    ref = mp_theta(t)
    assert abs(theta(t).theta - ref) <= theta_tol(ref)


def test_theta_fixture():
    for row in read_fixture("theta_z.csv"):
        ref = float(row["theta"])
        assert abs(theta(float(row["t"])).theta - ref) <= theta_tol(ref), row["t"]


def test_theta_correction_bounded_by_c_over_t():
    # next Stirling term is 1/(48 t); measured sup of |error| * t is 0.0212
    for t in np.logspace(1.5, 6, 60):
        approx = t / 2 * math.log(t / (2 * math.pi)) - t / 2 - math.pi / 8
        assert abs(theta(t).theta - approx) * t <= 0.0215


@pytest.mark.parametrize("t", [5.0, 12.0, 100.0, 5000.0, 2e5])
def test_dtheta_matches_finite_difference(t):
    h = 1e-4 * max(1.0, t) ** 0.5
    fd = (theta(t + h).theta - theta(t - h).theta) / (2 * h)
    assert abs(theta(t).dtheta - fd) <= 1e-6 * abs(fd)


def test_theta_array_agrees_with_scalar():
    ts = np.array([1.0, 9.0, 11.0, 500.0, 7e5])
    th, dth = theta_array(ts)
    for t, a, b in zip(ts, th, dth):
        v = theta(float(t))
        assert a == pytest.approx(v.theta, abs=1e-12, rel=1e-15)
        assert b == pytest.approx(v.dtheta, rel=1e-14)


def test_theta_rejects_negative():
    with pytest.raises(DomainError):
        theta(-1.0)


def test_z_at_first_zero():
    gamma1 = float(mp.im(mp.zetazero(1)))
    assert abs(hardy_z(gamma1)) < 1e-10


def test_z_fixture_within_method_floor():
    for row in read_fixture("theta_z.csv"):
        t = float(row["t"])
        tol = method_floor(t, "auto") if t >= 2 else 1e-12
        assert abs(hardy_z(t) - float(row["z"])) <= tol, t


@pytest.mark.parametrize("t", [20.0, 73.5, 1000.0, 31415.9])
def test_z_against_mpmath(t):
    ref = float(mp.siegelz(t))
    assert abs(hardy_z(t) - ref) <= max(method_floor(t, "auto"), 1e-12)


def test_cross_method_at_100():
    rs = hardy_z(100.0, EvalAccuracy(method="riemann_siegel"))
    em = hardy_z(100.0, EvalAccuracy(method="euler_maclaurin"))
    assert abs(rs - em) < 1e-6


def test_z_array_and_scalar_agree():
    ts = np.linspace(20, 2000, 37)
    arr = hardy_z(ts)
    assert np.allclose(arr, [hardy_z(float(t)) for t in ts], rtol=0, atol=1e-13)


def test_zeta_abs_sq_is_z_squared():
    assert zeta_abs_sq(50.0) == hardy_z(50.0) ** 2


def test_zeta_abs_sq_nonnegative_and_small_at_zeros():
    ts = np.linspace(2, 300, 1001)
    assert np.all(zeta_abs_sq(ts) >= 0)
    for row in read_fixture("zeta_zeros.csv")[:20]:
        g = float(row["gamma"])
        assert zeta_abs_sq(g) <= method_floor(g, "auto") ** 2 + 1e-20


def test_unreachable_accuracy_raises():
    with pytest.raises(AccuracyUnreachableError):
        hardy_z(30.0, EvalAccuracy(abs_tol=1e-12, method="riemann_siegel"))


def test_rs_needs_t_at_least_2():
    with pytest.raises(DomainError):
        hardy_z(1.0, EvalAccuracy(method="riemann_siegel"))


def test_second_moment_sanity():
    from jacobladder.quad import integrate
    q = integrate(lambda t: zeta_abs_sq(t), 5000.0, 10000.0, rel_tol=1e-6,
                  min_wavelength_hint=0.9)
    mean = q.value / 5000.0
    assert abs(mean / math.log(5000.0) - 1) < 0.25
