"""Gram points, the spacing law, and admissibility of Gram intervals.

A Gram interval [t_nu, t_{nu+1}] is admissible when it lies inside one cell
[mu_n, mu_{n+1}] between consecutive zeros of J1 and stays at least epsilon
away from an exclusion lattice.  Two lattices are supported:

* ``paper_literal``: k*pi,
* ``sin_zeros``: k*pi + pi/4, where sin(t - pi/4) vanishes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .bessel import BesselZeroTable, j1_zeros
from .errors import ConvergenceError, CoverageError, DomainError
from .quad import invert_monotone
from .rs_theta_zeta import theta, theta_array

__all__ = [
    "GramPoint",
    "IntervalClassification",
    "gram_point",
    "gram_points",
    "gram_seed",
    "spacing_residual",
    "spacing_residuals",
    "classify_interval",
    "count_admissible_in_cell",
    "cell_count_ratio",
    "DEFAULT_EPSILON",
]

TWO_PI = 2.0 * math.pi
LOG_TWO_PI = math.log(TWO_PI)
DEFAULT_EPSILON = 0.05
THETA_TOL = 1e-9

ExclusionMode = Literal["paper_literal", "sin_zeros"]
_LATTICE_SHIFT = {"paper_literal": 0.0, "sin_zeros": 0.25 * math.pi}


@dataclass(frozen=True)
class GramPoint:
    nu: int
    t: float
    theta_residual: float


@dataclass(frozen=True)
class IntervalClassification:
    nu: int
    t_lo: float
    t_hi: float
    containing_bessel_index: Optional[int]
    inside_bessel_cell: bool
    clears_exclusion_zone: bool
    sin_magnitude: float
    epsilon: float
    mode: str

    @property
    def admissible(self) -> bool:
        return self.inside_bessel_cell and self.clears_exclusion_zone


def _lambert_w(x):
    # principal branch for x > 0, Newton from log-based start
    x = np.asarray(x, dtype=float)
    lx = np.log(np.maximum(x, 3.0))
    w = np.where(x < 3, np.log1p(x), lx - np.log(lx))
    for _ in range(50):
        ew = np.exp(w)
        dw = (w * ew - x) / (ew * (w + 1))
        w = w - dw
        if np.all(np.abs(dw) <= 1e-15 * np.maximum(1, np.abs(w))):
            break
    return w


def gram_seed(nu):
    """Invert t/2 log(t/2pi) - t/2 - pi/8 = pi*nu via the Lambert W function."""
    m = np.asarray(nu, dtype=float) + 0.125
    return TWO_PI * m / _lambert_w(m / math.e)


def gram_points(nus, tol: float = THETA_TOL) -> np.ndarray:
    """Vectorised Gram points t_nu for an array of indices nu >= 1."""
    nus = np.asarray(nus)
    if nus.size and nus.min() < 1:
        raise DomainError("Gram indices start at 1")
    target = math.pi * nus.astype(float)
    t = gram_seed(nus)
    for _ in range(30):
        th, dth = theta_array(t)
        step = (th - target) / dth
        t = t - step
        if np.all(np.abs(step) <= 1e-15 * t):
            break
    th, _ = theta_array(t)
    bad = np.abs(th - target) > max(tol, 0.0) + 4 * np.spacing(target)
    for i in np.flatnonzero(bad):
        t[i] = gram_point(int(nus.flat[i]), tol).t
    return t


def _gram_bisect(nu, tol):
    target = math.pi * nu
    seed = float(gram_seed(nu))
    lo, hi = max(seed - 10.0, 6.5), seed + 10.0
    while theta(hi).theta < target:
        hi += 10.0
    try:
        return invert_monotone(lambda x: theta(x).theta, target, lo, hi,
                               tol=tol / max(1.0, target), samples=0,
                               dg=lambda x: theta(x).dtheta)
    except ConvergenceError as exc:
        raise ConvergenceError(f"Gram point nu={nu} did not converge", exc.state)


def gram_point(nu: int, tol: float = THETA_TOL) -> GramPoint:
    """t_nu with theta(t_nu) = pi*nu.

    Newton on theta(t) - pi*nu from the Lambert-W seed, falling back to a
    safeguarded bracket solve if Newton does not reach ``tol``.
    """
    nu = int(nu)
    if nu < 1:
        raise DomainError("Gram indices start at 1")
    target = math.pi * nu
    t = float(gram_seed(nu))
    for _ in range(30):
        tv = theta(t)
        step = (tv.theta - target) / tv.dtheta
        t -= step
        if abs(step) <= 1e-15 * t:
            break
    res = theta(t).theta - target
    # theta(t) ~ 3e5 at nu = 1e5, where one ulp is ~6e-11
    if abs(res) > tol + 4 * math.ulp(target):
        t = _gram_bisect(nu, tol)
        res = theta(t).theta - target
    return GramPoint(nu, t, res)


def spacing_residuals(nus):
    """Vectorised :func:`spacing_residual`; returns ``(residual, t_nu)``."""
    nus = np.asarray(nus)
    t0 = gram_points(nus)
    t1 = gram_points(nus + 1)
    L = np.log(t0)
    model = TWO_PI / L + TWO_PI * LOG_TWO_PI / L ** 2
    return (t1 - t0) - model, t0


def spacing_residual(nu: int) -> float:
    """(t_{nu+1} - t_nu) - [2pi/log t_nu + 2pi log(2pi)/log^2 t_nu]."""
    r, _ = spacing_residuals(np.array([nu]))
    return float(r[0])


def _clears(lo, hi, epsilon, shift):
    # does [lo, hi] avoid every [k*pi + shift - eps, k*pi + shift + eps], k >= 1?
    k = math.ceil((lo - epsilon - shift) / math.pi)
    k = max(k, 1)
    return not (k * math.pi + shift - epsilon <= hi)


def classify_interval(nu: int, epsilon: float = DEFAULT_EPSILON,
                      zeros: Optional[BesselZeroTable] = None,
                      exclusion_mode: ExclusionMode = "paper_literal",
                      t_pair: Optional[tuple] = None) -> IntervalClassification:
    """Admissibility verdict for [t_nu, t_{nu+1}].

    ``t_pair`` may carry precomputed (t_nu, t_{nu+1}) to skip the solve.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if exclusion_mode not in _LATTICE_SHIFT:
        raise ValueError(f"unknown exclusion mode {exclusion_mode!r}")
    if t_pair is None:
        t_lo, t_hi = gram_points(np.array([nu, nu + 1]))
    else:
        t_lo, t_hi = t_pair
    t_lo, t_hi = float(t_lo), float(t_hi)
    if zeros is None:
        zeros = j1_zeros(int(t_hi / math.pi) + 2)
    if t_hi > zeros.max_zero:
        raise CoverageError(
            f"Bessel zero table ends at {zeros.max_zero:.6g} < t_(nu+1) = {t_hi:.6g}",
            covered=(0.0, zeros.max_zero))
    n = int(zeros.cell_index(t_lo))
    if n == 0:
        cell, inside = None, False
    else:
        cell = n
        inside = t_hi <= zeros.zeros[n]  # mu_{n+1}
    clears = _clears(t_lo, t_hi, epsilon, _LATTICE_SHIFT[exclusion_mode])
    return IntervalClassification(
        nu=int(nu), t_lo=t_lo, t_hi=t_hi, containing_bessel_index=cell,
        inside_bessel_cell=bool(inside), clears_exclusion_zone=bool(clears),
        sin_magnitude=abs(math.sin(t_lo - 0.25 * math.pi)),
        epsilon=float(epsilon), mode=exclusion_mode)


def _gram_range_in(lo, hi):
    """Indices nu with lo <= t_nu <= hi."""
    th, _ = theta_array(np.array([lo, hi]))
    a = max(1, math.ceil(th[0] / math.pi) - 1)
    b = math.floor(th[1] / math.pi) + 1
    nus = np.arange(a, b + 1)
    t = gram_points(nus)
    keep = (t >= lo) & (t <= hi)
    return nus[keep], t[keep]


def count_admissible_in_cell(n: int, epsilon: Optional[float] = None,
                             zeros: Optional[BesselZeroTable] = None,
                             exclusion_mode: ExclusionMode = "paper_literal") -> int:
    """Number of Gram intervals wholly inside [mu_n, mu_{n+1}].

    With ``epsilon=None`` only the containment condition is applied, which
    gives the plain cell count; otherwise the exclusion zones must be cleared too.
    """
    if n < 1:
        raise DomainError("cell index starts at 1")
    if zeros is None or zeros.count < n + 1:
        zeros = j1_zeros(n + 1)
    lo, hi = zeros.mu(n), zeros.mu(n + 1)
    nus, t = _gram_range_in(lo, hi)
    if nus.size < 2:
        return 0
    if epsilon is None:
        return int(nus.size - 1)
    shift = _LATTICE_SHIFT[exclusion_mode]
    return sum(_clears(a, b, epsilon, shift) for a, b in zip(t[:-1], t[1:]))


def cell_count_ratio(n: int, zeros: Optional[BesselZeroTable] = None):
    """(N, N / (log(t)/2)) for cell n, t being the cell midpoint."""
    if zeros is None or zeros.count < n + 1:
        zeros = j1_zeros(n + 1)
    N = count_admissible_in_cell(n, zeros=zeros)
    mid = 0.5 * (zeros.mu(n) + zeros.mu(n + 1))
    return N, N / (0.5 * math.log(mid))
