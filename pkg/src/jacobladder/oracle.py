"""Recompute the shipped golden fixtures and compare.

The fixtures in ``jacobladder/data`` were produced at 50 significant digits
by an independent arbitrary-precision tool.  Set ``JACOBLADDER_FIXTURES`` to
compare against a different directory.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from .bessel import j0, j1, j1_zeros
from .errors import FixtureError
from .gram import gram_points
from .ladder import prime_pi
from .rs_theta_zeta import hardy_z, method_floor, theta

__all__ = ["FixtureCheck", "OracleReport", "fixture_dir", "oracle_check"]

ENV_VAR = "JACOBLADDER_FIXTURES"

FIXTURES = ("theta_z.csv", "zeta_zeros.csv", "gram_points.csv",
            "bessel_j1_zeros.csv", "bessel_values.csv", "prime_pi.csv")


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    count: int
    max_excess: float  # max over rows of deviation / tolerance
    max_deviation: float
    worst_key: str

    @property
    def passed(self) -> bool:
        return self.max_excess <= 1.0


@dataclass(frozen=True)
class OracleReport:
    directory: str
    checks: List[FixtureCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        yield "fixture,rows,max_deviation,max_deviation_over_tolerance,worst_row,status"
        for c in self.checks:
            yield (f"{c.name},{c.count},{c.max_deviation:.3e},{c.max_excess:.3e},"
                   f"{c.worst_key},{'ok' if c.passed else 'FAIL'}")


def fixture_dir(directory=None) -> Path:
    if directory is not None:
        return Path(directory)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def _rows(directory: Path, name: str):
    path = directory / name
    if not path.is_file():
        raise FixtureError(f"missing fixture {path}")
    with path.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise FixtureError(f"fixture {path} has no rows")
    return rows


class _Tally:
    def __init__(self, name):
        self.name = name
        self.n = 0
        self.excess = 0.0
        self.dev = 0.0
        self.key = ""

    def add(self, key, dev, tol):
        self.n += 1
        e = math.inf if not math.isfinite(dev) else dev / tol
        if e >= self.excess:
            self.excess, self.dev, self.key = e, dev, str(key)

    def done(self):
        return FixtureCheck(self.name, self.n, self.excess, self.dev, self.key)


def _theta_z(rows):
    th, z = _Tally("theta"), _Tally("hardy_z")
    for r in rows:
        t = float(r["t"])
        ref = float(r["theta"])
        # theta is only representable to a few ulp of its own magnitude
        th.add(r["t"], abs(theta(t).theta - ref), max(1e-10, 4 * math.ulp(ref)))
        tol = method_floor(t, "auto") if t >= 2 else 1e-12
        z.add(r["t"], abs(hardy_z(t) - float(r["z"])), tol)
    return [th.done(), z.done()]


def _zeta_zeros(rows):
    tally = _Tally("zeta_zeros")
    for r in rows:
        g = float(r["gamma"])
        tally.add(r["k"], abs(hardy_z(g)), method_floor(g, "auto") + 1e-12)
    return tally.done()


def _gram(rows):
    tally = _Tally("gram_points")
    nus = np.array([int(r["nu"]) for r in rows])
    for r, t in zip(rows, gram_points(nus)):
        ref = float(r["t"])
        tally.add(r["nu"], abs(t - ref) / ref, 1e-13)
    return tally.done()


def _bessel_zeros(rows):
    tally = _Tally("bessel_j1_zeros")
    table = j1_zeros(max(int(r["n"]) for r in rows))
    for r in rows:
        tally.add(r["n"], abs(table.mu(int(r["n"])) - float(r["mu"])), 1e-12)
    return tally.done()


def _bessel_values(rows):
    tally = _Tally("bessel_values")
    for r in rows:
        x = float(r["x"])
        dev = max(abs(j0(x) - float(r["j0"])), abs(j1(x) - float(r["j1"])))
        tally.add(r["x"], dev, 1e-13)
    return tally.done()


def _primes(rows):
    tally = _Tally("prime_pi")
    for r in rows:
        tally.add(r["t"], abs(prime_pi(float(r["t"])) - int(r["pi"])), 0.5)
    return tally.done()


def oracle_check(directory: Optional[str] = None) -> OracleReport:
    """Compare every fixture against the package; raises FixtureError if one is missing."""
    d = fixture_dir(directory)
    data = {name: _rows(d, name) for name in FIXTURES}
    checks = _theta_z(data["theta_z.csv"])
    checks += [
        _zeta_zeros(data["zeta_zeros.csv"]),
        _gram(data["gram_points.csv"]),
        _bessel_zeros(data["bessel_j1_zeros.csv"]),
        _bessel_values(data["bessel_values.csv"]),
        _primes(data["prime_pi.csv"]),
    ]
    return OracleReport(str(d), checks)
