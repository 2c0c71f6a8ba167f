import math

import numpy as np
import pytest

from jacobladder.bessel import j0, j1
from jacobladder.errors import (AccuracyUnreachableError, CoverageError, DomainError,
                                PreconditionError, TableFormatError)
from jacobladder.gram import gram_point, gram_points
from jacobladder.ladder import (EULER_GAMMA, PrimeCounter, build_ladder, lag_ratio,
                                ladder_inverse, ladder_value, load_ladder, prime_pi,
                                save_ladder, substitution_check)
from jacobladder.rs_theta_zeta import hardy_z
from conftest import read_fixture


def test_prime_pi_values():
    assert prime_pi(10) == 4
    assert prime_pi(100) == 25
    assert prime_pi(1e6) == 78498


def test_prime_pi_fixture():
    for row in read_fixture("prime_pi.csv"):
        assert prime_pi(float(row["t"])) == int(row["pi"])


def test_prime_counter_coverage():
    c = PrimeCounter.build(100)
    assert c(97.5) == 25
    with pytest.raises(CoverageError):
        c(1000)


def test_anchor(ladder1):
    t0 = ladder1.t_min
    assert t0 - ladder_value(ladder1, t0) == pytest.approx((1 - EULER_GAMMA) * prime_pi(t0),
                                                           abs=1e-12)


def test_monotone(ladder1):
    t = np.linspace(ladder1.t_min, ladder1.t_max, 20001)
    assert np.all(np.diff(ladder1.value(t)) > 0)
    assert np.all(ladder1.derivative(t) >= -1e-12)


def test_derivative_definition(ladder1):
    t = np.linspace(100, 2900, 57)
    expected = hardy_z(t) ** 2 / np.log(t)
    assert np.allclose(ladder1.derivative(t), expected, rtol=0, atol=1e-9)


def test_order_two_derivative(ladder2):
    t = np.linspace(100, 6900, 31)
    expected = 2 * math.pi ** 2 * hardy_z(t) ** 4 / np.log(t) ** 4
    assert np.allclose(ladder2.derivative(t), expected, rtol=1e-9, atol=1e-9)


def test_first_order_stays_below_identity(ladder1):
    t = np.linspace(ladder1.t_min, ladder1.t_max, 5000)
    assert np.all(ladder1.value(t) < t)


def test_inverse_of_gram_point_is_larger(ladder1):
    for nu in (10, 100, 500):
        t_nu = gram_point(nu).t
        assert ladder_inverse(ladder1, t_nu) > t_nu


def test_round_trip_random_points(ladder1):
    # As stated for the table: 1000 random points, |phi^-1(phi(t)) - t| <= 1e-8.
    # Near zeros of Z, phi' < 1e-4 and rounding phi(t) to a double alone
    # moves t by ulp(phi)/phi' > 1e-8, so a few points are expected to fail.
    rng = np.random.default_rng(20240611)
    t = rng.uniform(ladder1.t_min, ladder1.t_max, 1000)
    err = np.abs(ladder1.inverse(ladder1.value(t)) - t)
    assert np.all(err <= 1e-8), f"{np.sum(err > 1e-8)} of 1000 points exceed 1e-8"


def test_round_trip_well_conditioned_points(ladder1):
    rng = np.random.default_rng(20240611)
    t = rng.uniform(ladder1.t_min, ladder1.t_max, 1000)
    x = ladder1.value(t)
    back = ladder1.inverse(x)
    ok = ladder1.derivative(t) > 1e-3
    assert np.all(np.abs(back - t)[ok] <= 1e-8)
    # backward error is at rounding level everywhere
    assert np.all(np.abs(ladder1.value(back) - x) <= 8 * np.spacing(x))


def test_scalar_and_vector_inverse_agree(ladder1):
    xs = np.array([50.0, 999.9, 2500.0])
    assert np.array_equal(ladder1.inverse(xs), [ladder1.inverse(float(x)) for x in xs])


def test_refinement_agreement():
    a = build_ladder(1, 10.0, 1500.0, tol=1e-9)
    b = build_ladder(1, 10.0, 1500.0, tol=1e-10)
    t = np.linspace(10.0, 1500.0, 3001)
    assert np.max(np.abs(a.value(t) - b.value(t))) <= 20 * 1e-9


def test_coverage_errors(ladder1):
    with pytest.raises(CoverageError):
        ladder1.value(ladder1.t_max + 1)
    with pytest.raises(CoverageError):
        ladder1.inverse(ladder1.phi_max + 1)


def test_build_domain():
    with pytest.raises(DomainError):
        build_ladder(1, 5.0, 100.0)
    with pytest.raises(DomainError):
        build_ladder(1, 100.0, 100.0)
    with pytest.raises(ValueError):
        build_ladder(3, 10.0, 100.0)


def test_unreachable_tolerance():
    with pytest.raises(AccuracyUnreachableError):
        build_ladder(1, 9000.0, 9100.0, tol=1e-15)


def test_lag_ratio_diagnostic(ladder1):
    # (t - phi_1)/((1 - c) pi(t)) is monitored only; it decreases slowly
    r1 = lag_ratio(ladder1, 1000.0)
    r2 = lag_ratio(ladder1, 2900.0)
    assert 1 < r2 < r1 < 3


def test_substitution_constant(ladder1):
    r = substitution_check(ladder1, lambda x: np.ones_like(x), 1000.0, 10.0)
    assert abs(r.lhs - 10.0) <= 1e-8
    assert abs(r.rhs - 10.0) <= 1e-12


def test_substitution_j1_over_gram_interval(ladder1):
    t0, t1 = gram_points(np.array([500, 501]))
    r = substitution_check(ladder1, j1, t0, t1 - t0)
    assert abs(r.rhs - (j0(t0) - j0(t1))) <= 1e-12
    assert abs(r.lhs - r.rhs) <= 1e-8


def test_substitution_linear(ladder1):
    T, U = 2000.0, 5.0
    r = substitution_check(ladder1, lambda x: x, T, U)
    exact = T * U + U * U / 2
    assert abs(r.rhs - exact) <= 1e-12 * exact
    assert abs(r.lhs - exact) <= 3 * r.error_budget


def test_substitution_u_bound(ladder1):
    with pytest.raises(PreconditionError):
        substitution_check(ladder1, np.cos, 1000.0, 200.0)


def test_save_load_round_trip(ladder1, tmp_path):
    path = tmp_path / "l1.csv"
    save_ladder(ladder1, path)
    head = path.read_text().split("\n", 2)
    assert head[0].startswith("# {") and head[1] == "t,phi,phi_prime"
    back = load_ladder(path)
    t = np.linspace(ladder1.t_min, ladder1.t_max, 4001)
    assert np.max(np.abs(back.value(t) - ladder1.value(t))) <= 1e-9
    assert back.order == 1 and back.anchor == ladder1.anchor


def test_load_detects_corruption(ladder1, tmp_path):
    path = tmp_path / "l1.csv"
    save_ladder(ladder1, path)
    lines = path.read_text().split("\n")
    t, phi, d = lines[500].split(",")
    lines[500] = ",".join([t, repr(float(phi) + 1e-3), d])
    path.write_text("\n".join(lines))
    with pytest.raises(TableFormatError):
        load_ladder(path)
