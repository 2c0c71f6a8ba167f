"""Arbitrary-precision oracle for the golden fixtures.

Computes every reference value with mpmath at 50 digits (prime counts with
sympy) and writes CSV files into src/jacobladder/data/.  Nothing here imports
the package under test.

    python tools/oracle.py            # regenerate all fixtures
"""
from __future__ import annotations

import csv
import sys
from pathlib import Path

import mpmath as mp
import sympy

DIGITS = 50
OUT = Path(__file__).resolve().parents[1] / "src" / "jacobladder" / "data"

mp.mp.dps = DIGITS + 10


def theta(t):
    t = mp.mpf(t)
    return mp.im(mp.loggamma(mp.mpf(1) / 4 + 1j * t / 2)) - t / 2 * mp.log(mp.pi)


def hardy_z(t):
    t = mp.mpf(t)
    return mp.re(mp.exp(1j * theta(t)) * mp.zeta(mp.mpf(1) / 2 + 1j * t))


def gram_point(nu):
    target = mp.pi * nu
    # theta is increasing past t ~ 6.29; bracket from the two-term asymptotic
    lo, hi = mp.mpf(7), mp.mpf(10)
    while theta(hi) < target:
        lo, hi = hi, hi * 2
    return mp.findroot(lambda t: theta(t) - target, (lo, hi), solver="anderson")


def fmt(x):
    return mp.nstr(x, DIGITS)


def write(name, header, rows):
    path = OUT / name
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)", file=sys.stderr)


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    theta_zero = mp.findroot(theta, 17.8)
    first_zero = mp.im(mp.zetazero(1))
    ts = ["1", "5", "10", str(first_zero), str(theta_zero), "20", "30", "50",
          "100", "137.5", "1000", "5000", "10000", "100000", "1000000"]
    rows = []
    for t in ts:
        t = mp.mpf(t)
        rows.append([fmt(t), fmt(theta(t)), fmt(hardy_z(t)), DIGITS])
    write("theta_z.csv", ["t", "theta", "z", "source_digits"], rows)

    rows = [[k, fmt(mp.im(mp.zetazero(k))), DIGITS] for k in range(1, 80)]
    write("zeta_zeros.csv", ["k", "gamma", "source_digits"], rows)

    rows = []
    for nu in (1, 2, 3, 4, 5, 10, 100, 1000, 10000, 100000):
        rows.append([nu, fmt(gram_point(nu)), DIGITS])
    write("gram_points.csv", ["nu", "t", "source_digits"], rows)

    rows = []
    for n in list(range(1, 11)) + [50, 100, 101, 500, 1000, 3000]:
        rows.append([n, fmt(mp.besseljzero(1, n)), DIGITS])
    write("bessel_j1_zeros.csv", ["n", "mu", "source_digits"], rows)

    rows = []
    for x in ("0", "0.5", "1", "3.8317059702075123156144358863081607665645452742878",
              "7.5", "8", "10", "12.25", "19.5", "20", "25", "100", "1000", "10000",
              "1000000"):
        x = mp.mpf(x)
        rows.append([fmt(x), fmt(mp.besselj(0, x)), fmt(mp.besselj(1, x)), DIGITS])
    write("bessel_values.csv", ["x", "j0", "j1", "source_digits"], rows)

    rows = []
    for t in (2, 10, 100, 1000, 1000.5, 10**4, 10**5, 10**6):
        rows.append([t, int(sympy.primepi(int(t))), "sympy.primepi"])
    write("prime_pi.csv", ["t", "pi", "source"], rows)


if __name__ == "__main__":
    main()
