"""Adaptive Gauss-Kronrod quadrature and safeguarded monotone inversion.

The quadrature evaluates the integrand on whole batches of panels at once,
so ``f`` must accept a numpy array and return an array of the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (BracketError, ConvergenceError, IntegrandNaNError,
                     NonMonotoneError, OrderingError, QuadratureError)

__all__ = ["QuadratureResult", "integrate", "invert_monotone", "gk15"]

# QUADPACK qk15: Kronrod abscissae (positive half, descending) and weights;
# every second abscissa is also a 7-point Gauss node.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # ascending, 15
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels: int
    evaluations: int


def gk15(f, lo, hi):
    """Apply the 15-point Kronrod rule to each panel ``[lo[i], hi[i]]``.

    Returns ``(value, error, roundoff_floor)`` arrays.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)][0]
        raise IntegrandNaNError(f"integrand not finite at x={bad!r}")
    resk = fx @ KRONROD_WEIGHTS
    resg = fx @ GAUSS_WEIGHTS
    reskh = 0.5 * resk
    resabs = np.abs(fx) @ KRONROD_WEIGHTS
    resasc = np.abs(fx - reskh[:, None]) @ KRONROD_WEIGHTS
    ah = np.abs(half)
    err = np.abs((resk - resg) * half)
    resasc = resasc * ah
    resabs = resabs * ah
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _UFLOW / (50 * _EPS), np.maximum(floor, err), err)
    return resk * half, err, floor


def integrate(f: Callable, a: float, b: float, rel_tol: float = 1e-10,
              min_wavelength_hint: Optional[float] = None, abs_tol: float = 0.0,
              max_evaluations: int = 1_000_000) -> QuadratureResult:
    """Adaptive integral of a vectorised ``f`` over ``[a, b]``.

    Panels whose error exceeds their width-share of the global target are
    bisected until the summed error estimate meets
    ``max(abs_tol, rel_tol * |value|)`` or only roundoff remains.  With a
    wavelength hint the initial panels are no wider than half of it.
    """
    a = float(a)
    b = float(b)
    if b < a:
        raise OrderingError(f"integrate requires a <= b, got [{a}, {b}]")
    if not rel_tol > 0:
        raise ValueError("rel_tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 1, 0)
    n0 = 1
    if min_wavelength_hint is not None:
        if not min_wavelength_hint > 0:
            raise ValueError("min_wavelength_hint must be positive")
        n0 = max(1, math.ceil((b - a) / (0.5 * min_wavelength_hint)))
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    val, err, floor = gk15(f, lo, hi)
    evals = 15 * n0
    width = b - a
    while True:
        total = float(np.sum(val))
        etot = float(np.sum(err))
        target = max(abs_tol, rel_tol * abs(total))
        result = QuadratureResult(total, etot, int(lo.size), evals)
        if etot <= target or etot <= 2.0 * float(np.sum(floor)):
            return result
        split = err > target * (hi - lo) / width
        # panels already at roundoff or at float resolution cannot improve
        split &= err > floor
        split &= (hi - lo) > 64 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if not np.any(split):
            return result
        nsplit = int(split.sum())
        if evals + 30 * nsplit > max_evaluations:
            raise QuadratureError(
                f"evaluation budget {max_evaluations} exhausted on [{a}, {b}]; "
                f"estimate {total!r} +- {etot:.3g}", result)
        m = 0.5 * (lo[split] + hi[split])
        clo = np.concatenate([lo[split], m])
        chi = np.concatenate([m, hi[split]])
        cval, cerr, cfloor = gk15(f, clo, chi)
        evals += 15 * clo.size
        keep = ~split
        lo = np.concatenate([lo[keep], clo])
        hi = np.concatenate([hi[keep], chi])
        val = np.concatenate([val[keep], cval])
        err = np.concatenate([err[keep], cerr])
        floor = np.concatenate([floor[keep], cfloor])
        order = np.argsort(lo, kind="stable")
        lo, hi, val, err, floor = lo[order], hi[order], val[order], err[order], floor[order]


def invert_monotone(g: Callable[[float], float], target: float, bracket_lo: float,
                    bracket_hi: float, tol: float = 1e-14, samples: int = 8,
                    max_iter: int = 200, dg: Optional[Callable] = None) -> float:
    """Solve ``g(x) = target`` for monotone ``g`` on a bracket.

    Newton steps (when the derivative ``dg`` is supplied) or secant steps
    are taken when they land well inside the current bracket; otherwise the
    bracket is bisected.  Returns x with
    ``|g(x) - target| <= tol * max(1, |target|)``, or the best point once
    the bracket has shrunk to neighbouring floats (steep ``g``).
    """
    lo, hi = float(bracket_lo), float(bracket_hi)
    if hi < lo:
        lo, hi = hi, lo
    target = float(target)
    glo, ghi = float(g(lo)), float(g(hi))
    sign = 1.0 if ghi >= glo else -1.0
    atol = tol * max(1.0, abs(target))
    if not (sign * (glo - target) <= atol and sign * (ghi - target) >= -atol):
        raise BracketError(
            f"target {target!r} not bracketed: g({lo})={glo!r}, g({hi})={ghi!r}")
    if samples > 0 and hi > lo:
        xs = np.linspace(lo, hi, samples + 2)
        gs = np.array([glo] + [float(g(x)) for x in xs[1:-1]] + [ghi])
        slack = 10 * atol
        if np.any(sign * np.diff(gs) < -slack):
            raise NonMonotoneError(f"g is not monotone on [{lo}, {hi}]")
        # shrink the bracket using the samples
        k = int(np.searchsorted(sign * gs, sign * target))
        k = min(max(k, 1), samples + 1)
        lo, hi, glo, ghi = xs[k - 1], xs[k], gs[k - 1], gs[k]
    flo, fhi = sign * (glo - target), sign * (ghi - target)
    if abs(flo) <= atol:
        return lo
    if abs(fhi) <= atol:
        return hi
    best, best_f = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for _ in range(max_iter):
        width = hi - lo
        x = None
        if dg is not None:
            d = sign * float(dg(best))
            if d > 0:
                x = best - best_f / d
        elif fhi != flo:
            x = lo - flo * width / (fhi - flo)
        # bisect when the model step leaves or hugs the bracket
        if x is None or not (lo < x < hi) or min(x - lo, hi - x) < 1e-3 * width:
            x = lo + 0.5 * width
        fx = sign * (float(g(x)) - target)
        if abs(fx) < abs(best_f):
            best, best_f = x, fx
        if abs(best_f) <= atol:
            return best
        if fx < 0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if hi - lo <= 2 * _EPS * max(abs(lo), abs(hi)):
            return best
    raise ConvergenceError(
        f"invert_monotone stalled: |g(x)-target|={abs(best_f):.3g} > {atol:.3g}",
        state={"lo": lo, "hi": hi, "best": best})
