"""
Gram points and Bessel cells
============================

Gram points t_nu solve theta(t) = pi*nu.  Their spacing shrinks like
2pi/log t, while consecutive zeros of J1 sit roughly pi apart.  An interval
[t_nu, t_{nu+1}] is *admissible* when it fits inside one such cell and keeps
a small distance epsilon from a lattice of exclusion points.
"""

import math

import numpy as np

from jacobladder import gram_points, j1_zeros
from jacobladder.gram import cell_count_ratio, classify_interval, spacing_residuals

###############################################################################
# The first few Gram points, and how well the two-term spacing law does.

nus = np.arange(1, 11)
print(np.column_stack([nus, gram_points(nus)]))

nus = np.unique(np.round(np.logspace(1, 4, 25)).astype(int))
res, t = spacing_residuals(nus)
for nu, tt, r in zip(nus, t, res):
    print(f"nu={nu:6d}  t={tt:10.3f}  residual={r: .3e}  residual*log^3 t={r * math.log(tt) ** 3: .3f}")

###############################################################################
# Zeros of J1 approach a spacing of exactly pi.

z = j1_zeros(101)
gaps = np.diff(z.zeros) - math.pi
print("mu_2 - mu_1 - pi =", gaps[0], "  mu_101 - mu_100 - pi =", gaps[99])

###############################################################################
# Admissibility of a run of intervals, in both exclusion modes.

zeros = j1_zeros(700)
for nu in range(1000, 1012):
    a = classify_interval(nu, 0.05, zeros, "paper_literal")
    b = classify_interval(nu, 0.05, zeros, "sin_zeros")
    print(f"nu={nu}  t={a.t_lo:9.3f}  cell={a.containing_bessel_index}  "
          f"inside={a.inside_bessel_cell!s:5}  k*pi clear={a.clears_exclusion_zone!s:5}  "
          f"k*pi+pi/4 clear={b.clears_exclusion_zone}")

###############################################################################
# How many Gram intervals fit in one Bessel cell?  The count grows like
# log(t)/2 only slowly: a cell of width pi holds about pi/gap - 1 whole
# intervals, which is well short of log(t)/2 at desk-scale heights.

for n in (30, 300, 1600, 3180):
    N, ratio = cell_count_ratio(n)
    print(f"cell {n:5d} near t={n * math.pi:8.1f}: N={N}  N/(log(t)/2)={ratio:.3f}")
