import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import read_fixture
from jacobladder.bessel import (BesselZeroTable, bessel_asymptotic, j0, j0_asymptotic_difference,
                                j1, j1_definite_integral, j1_zeros)
from jacobladder.errors import DomainError, OrderingError
from jacobladder.gram import gram_points
from jacobladder.quad import integrate

mp.mp.dps = 30


def test_values_at_zero():
    assert j0(0.0) == 1.0
    assert j1(0.0) == 0.0


def test_j0_at_first_j1_zero():
    mu1 = float(mp.besseljzero(1, 1))
    assert j0(mu1) == pytest.approx(float(mp.besselj(0, mu1)), abs=1e-15)
    assert j0(mu1) == pytest.approx(-0.402759395702553, abs=1e-14)


@pytest.mark.parametrize("x", [0.1, 2.5, 7.99, 8.0, 8.01, 13.7, 19.99, 20.0, 20.01, 55.5,
                               999.3, 9876.5, 2.5e5, 1e6])
def test_against_mpmath(x):
    tol = 1e-12 if x <= 1e4 else 1e-9
    assert abs(j0(x) - float(mp.besselj(0, x))) <= tol
    assert abs(j1(x) - float(mp.besselj(1, x))) <= tol


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e4, allow_nan=False))
def test_random_arguments(x):
    assert abs(j0(x) - float(mp.besselj(0, x))) <= 1e-12
    assert abs(j1(x) - float(mp.besselj(1, x))) <= 1e-12


def test_fixture_values():
    for row in read_fixture("bessel_values.csv"):
        x = float(row["x"])
        assert abs(j0(x) - float(row["j0"])) <= 1e-13
        assert abs(j1(x) - float(row["j1"])) <= 1e-13


def test_branch_seams_continuous():
    for seam in (8.0, 20.0):
        x = np.array([np.nextafter(seam, 0), seam, np.nextafter(seam, 100)])
        assert np.ptp(j0(x)) < 1e-14
        assert np.ptp(j1(x)) < 1e-14


def test_vectorised_matches_scalar():
    xs = np.linspace(0, 60, 241)
    assert np.array_equal(j1(xs), np.array([j1(float(x)) for x in xs]))


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        j0(-1.0)
    with pytest.raises(DomainError):
        j1(np.array([1.0, -0.5]))


def test_leading_asymptotic_remainder_at_1000():
    x = 1000.0
    assert abs(j0(x) - bessel_asymptotic(0, x)) <= 2 / x ** 1.5


def test_first_zeros():
    z = j1_zeros(2)
    assert z.mu(1) == pytest.approx(3.8317059702075123, abs=1e-12)
    assert z.mu(2) == pytest.approx(7.0155866698156187, abs=1e-12)


def test_zero_fixture():
    rows = read_fixture("bessel_j1_zeros.csv")
    table = j1_zeros(max(int(r["n"]) for r in rows))
    for r in rows:
        assert abs(table.mu(int(r["n"])) - float(r["mu"])) <= 1e-12


def test_zero_table_invariants():
    z = j1_zeros(500)
    assert np.all(np.diff(z.zeros) > 0)
    assert np.all(z.residuals() < 1e-13)
    lo, hi = z.zeros - 1e-9, z.zeros + 1e-9
    assert np.all(np.sign(j1(lo)) != np.sign(j1(hi)))
    gap = np.abs(np.diff(z.zeros) - math.pi)
    assert gap[99] < gap[4]


def test_zero_table_is_read_only():
    z = j1_zeros(5)
    with pytest.raises(ValueError):
        z.zeros[0] = 1.0


def test_cell_index():
    z = j1_zeros(10)
    assert z.cell_index(1.0) == 0
    assert z.cell_index(z.mu(3)) == 3
    assert z.cell_index(0.5 * (z.mu(3) + z.mu(4))) == 3


def test_table_validation():
    with pytest.raises(ValueError):
        BesselZeroTable(np.array([3.0, 2.0]))
    with pytest.raises(ValueError):
        j1_zeros(0)


def test_definite_integral_empty():
    assert j1_definite_integral(5.0, 5.0) == 0.0


def test_definite_integral_against_quadrature():
    mu1 = j1_zeros(1).mu(1)
    q = integrate(j1, 0.0, mu1, rel_tol=1e-12)
    assert abs(q.value - j1_definite_integral(0.0, mu1)) <= 1e-10
    assert j1_definite_integral(0.0, mu1) == pytest.approx(1 - j0(mu1), abs=1e-16)


def test_definite_integral_ordering():
    with pytest.raises(OrderingError):
        j1_definite_integral(2.0, 1.0)


def test_asymptotic_difference_empty():
    assert j0_asymptotic_difference(100.0, 100.0) == 0.0


def test_asymptotic_difference_remainder_at_gram_500():
    # measured constant 0.393 at nu = 500
    a, b = gram_points(np.array([500, 501]))
    diff = abs(j1_definite_integral(a, b) - j0_asymptotic_difference(a, b))
    assert diff * a ** 1.5 <= 0.6


def test_cosine_reduction_band_at_1000():
    # residual * log^2 t stays below 35 over nu in [100, 1e4]
    t0 = 1000.0
    t1 = t0 + 2 * math.pi / math.log(t0)
    lhs = math.cos(t0 - math.pi / 4) - math.cos(t1 - math.pi / 4)
    rhs = 2 * math.pi / math.log(t0) * math.sin(t0 - math.pi / 4)
    assert abs(lhs - rhs) * math.log(t0) ** 2 <= 35.0
