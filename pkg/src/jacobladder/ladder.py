"""Numerical Jacob's ladders of first and second order.

A ladder is built from its derivative rather than from the defining
integral equation:

* order 1:  phi_1'(t) = Z(t)^2 / log t
* order 2:  phi_2'(t) = 2 pi^2 Z(t)^4 / log^4 t

The range is cut into panels no wider than min(0.25, pi/log t).  On each
panel phi' is interpolated at Chebyshev-Lobatto nodes and integrated exactly,
so the table stores a piecewise polynomial phi whose derivative is exactly the
piecewise interpolant of phi'.  Panels whose trailing Chebyshev coefficients
exceed the tolerance are bisected.  Because the stored weight is the exact
derivative of the stored phi, the change of variables

    int_{phi^-1(T)}^{phi^-1(T+U)} f(phi(t)) phi'(t) dt = int_T^{T+U} f(x) dx

holds to quadrature accuracy for every table.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Literal, Optional

import numpy as np
from numpy.polynomial import chebyshev as C

from .errors import (AccuracyUnreachableError, CoverageError, DomainError, JacobLadderError,
                     PreconditionError, TableFormatError)
from .quad import integrate
from .rs_theta_zeta import DEFAULT_ACCURACY, EvalAccuracy, hardy_z

__all__ = [
    "EULER_GAMMA",
    "PrimeCounter",
    "prime_pi",
    "LadderTable",
    "build_ladder",
    "ladder_value",
    "ladder_inverse",
    "substitution_check",
    "SubstitutionResult",
    "lag_ratio",
    "save_ladder",
    "load_ladder",
]

EULER_GAMMA = 0.57721566490153286061
LADDER_T_MIN = 10.0
LADDER_T_MAX = 1e6
_FORMAT = "jacobladder-table/1"

DERIVATIVE_DEFS = {
    1: "phi1'(t) = Z(t)^2 / log(t)",
    2: "phi2'(t) = 2*pi^2 * Z(t)^4 / log(t)^4",
}
DEFAULT_DEGREE = {1: 16, 2: 24}


# ------------------------------------------------------------ primes

@dataclass(frozen=True)
class PrimeCounter:
    """Sieve-backed pi(t) for 0 <= t <= limit."""

    limit: int
    table: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "PrimeCounter":
        limit = int(limit)
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p::p] = False
        table = np.cumsum(sieve, dtype=np.int64)
        table.setflags(write=False)
        return cls(limit, table)

    def __call__(self, t) -> int:
        t = float(t)
        if t < 0:
            raise DomainError("pi(t) requires t >= 0")
        if t > self.limit:
            raise CoverageError(f"sieve limit {self.limit} exceeded by t={t}",
                                covered=(0, self.limit))
        return int(self.table[int(math.floor(t))])


@functools.lru_cache(maxsize=4)
def _default_counter(limit: int) -> PrimeCounter:
    return PrimeCounter.build(limit)


def prime_pi(t, counter: Optional[PrimeCounter] = None) -> int:
    """Number of primes <= t (exact, by sieve)."""
    if counter is None:
        counter = _default_counter(max(10 ** 6, 1 << int(math.ceil(math.log2(max(float(t), 2.0))))))
    if float(t) < 2:
        raise DomainError("prime_pi is offered for t >= 2")
    return counter(t)


# ------------------------------------------------------------ ladder

def _derivative(order: int, acc: EvalAccuracy):
    if order == 1:
        def f(t):
            z = hardy_z(t, acc)
            return z * z / np.log(t)
    elif order == 2:
        def f(t):
            z2 = hardy_z(t, acc) ** 2
            return 2.0 * math.pi ** 2 * z2 * z2 / np.log(t) ** 4
    else:
        raise ValueError("order must be 1 or 2")
    return f


def _lobatto(degree):
    return -np.cos(np.pi * np.arange(degree + 1) / degree)


@functools.lru_cache(maxsize=8)
def _values_to_coef(degree):
    V = C.chebvander(_lobatto(degree), degree)
    return np.linalg.inv(V).T


def _chebval_rows(x, coef):
    """Evaluate row-wise Chebyshev series coef[i] at x[i] (Clenshaw)."""
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(coef.shape[1] - 1, 0, -1):
        b1, b2 = 2.0 * x * b1 - b2 + coef[:, k], b1
    return x * b1 - b2 + coef[:, 0]


def _panel_edges(t_min, t_max):
    edges = [np.array([t_min])]
    a = t_min
    while a < t_max:
        b = min(a + 100.0, t_max)
        step = min(0.25, math.pi / math.log(b))
        n = max(1, math.ceil((b - a) / step))
        edges.append(np.linspace(a, b, n + 1)[1:])
        a = b
    e = np.concatenate(edges)
    e[-1] = t_max
    return e


def _node_times(lo, hi, degree):
    x = _lobatto(degree)
    return 0.5 * (lo + hi)[:, None] + 0.5 * (hi - lo)[:, None] * x[None, :]


def _fit(values, degree):
    return values @ _values_to_coef(degree)


@dataclass(frozen=True)
class LadderTable:
    """Monotone piecewise-polynomial ladder phi on [t_min, t_max].

    ``edges`` are the panel boundaries, ``phi_edges`` the ladder values
    there, and ``dcoef`` / ``icoef`` the per-panel Chebyshev coefficients of
    phi' (in t) and of phi - phi(left edge) (in the panel variable).
    """

    order: int
    edges: np.ndarray = field(repr=False)
    phi_edges: np.ndarray = field(repr=False)
    dcoef: np.ndarray = field(repr=False)
    icoef: np.ndarray = field(repr=False)
    node_values: np.ndarray = field(repr=False)
    anchor: tuple
    tol: float
    degree: int
    derivative_def: str

    @property
    def t_min(self) -> float:
        return float(self.edges[0])

    @property
    def t_max(self) -> float:
        return float(self.edges[-1])

    @property
    def phi_min(self) -> float:
        return float(self.phi_edges[0])

    @property
    def phi_max(self) -> float:
        return float(self.phi_edges[-1])

    @property
    def n_panels(self) -> int:
        return int(self.edges.size - 1)

    def covers(self, lo: float, hi: float) -> bool:
        return self.t_min <= lo and hi <= self.t_max

    def covers_image(self, lo: float, hi: float) -> bool:
        return self.phi_min <= lo and hi <= self.phi_max

    def _locate(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_min) or np.any(t > self.t_max) or np.any(np.isnan(t)):
            raise CoverageError(
                f"t outside ladder range [{self.t_min}, {self.t_max}]",
                covered=(self.t_min, self.t_max))
        idx = np.clip(np.searchsorted(self.edges, t, side="right") - 1, 0, self.n_panels - 1)
        a = self.edges[idx]
        b = self.edges[idx + 1]
        x = (2.0 * t - a - b) / (b - a)
        return idx, x

    def value(self, t):
        """phi(t); scalar or array."""
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx, x = self._locate(t.ravel())
        out = self.phi_edges[idx] + _chebval_rows(x, self.icoef[idx])
        return float(out[0]) if scalar else out.reshape(t.shape)

    def derivative(self, t):
        """phi'(t), the exact derivative of :meth:`value`."""
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx, x = self._locate(t.ravel())
        out = _chebval_rows(x, self.dcoef[idx])
        return float(out[0]) if scalar else out.reshape(t.shape)

    def inverse(self, x, tol: float = 4e-16):
        """phi^{-1}(x); scalar or array.

        Safeguarded Newton on the located panel, vectorised over ``x``.
        Where phi' is tiny (near zeros of Z) the inverse is ill-conditioned:
        the returned t satisfies |phi(t) - x| to about one ulp of x, but t
        itself may be off by ~ulp(x)/phi'(t).
        """
        scalar = np.ndim(x) == 0
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(xs < self.phi_min) or np.any(xs > self.phi_max) or np.any(np.isnan(xs)):
            raise CoverageError(
                f"x outside ladder image [{self.phi_min}, {self.phi_max}] "
                f"(t range [{self.t_min}, {self.t_max}])",
                covered=(self.phi_min, self.phi_max))
        flat = xs.ravel()
        k = np.clip(np.searchsorted(self.phi_edges, flat, side="right") - 1,
                    0, self.n_panels - 1)
        out = self._invert_panels(k, flat, tol)
        return float(out[0]) if scalar else out.reshape(xs.shape)

    def _invert_panels(self, k, x, tol):
        ic, dc = self.icoef[k], self.dcoef[k]
        base = self.phi_edges[k]
        r = x - base  # target for the panel polynomial, >= 0
        top = self.phi_edges[k + 1] - base
        lo = np.full(x.shape, -1.0)
        hi = np.ones(x.shape)
        half = 0.5 * (self.edges[k + 1] - self.edges[k])
        s = np.clip(np.where(top > 0, 2.0 * r / np.where(top > 0, top, 1.0) - 1.0, 0.0), -1, 1)
        atol = tol * np.maximum(1.0, np.abs(x))
        done = np.zeros(x.shape, dtype=bool)
        for _ in range(100):
            g = _chebval_rows(s, ic) - r
            conv = np.abs(g) <= atol
            done |= conv
            lo = np.where(g < 0, s, lo)
            hi = np.where(g > 0, s, hi)
            done |= (hi - lo) <= 4 * np.finfo(float).eps
            if np.all(done):
                break
            d = _chebval_rows(s, dc) * half
            with np.errstate(divide="ignore", invalid="ignore"):
                sn = s - g / d
            bad = ~np.isfinite(sn) | (sn <= lo) | (sn >= hi)
            sn = np.where(bad, 0.5 * (lo + hi), sn)
            s = np.where(done, s, sn)
        mid = 0.5 * (self.edges[k] + self.edges[k + 1])
        t = mid + half * s
        return np.clip(t, self.edges[k], self.edges[k + 1])


def _assemble(order, edges, values, degree, anchor, tol, derivative_def):
    h = np.diff(edges)
    dcoef = _fit(values, degree)
    icoef = C.chebint(dcoef, lbnd=-1, axis=1) * (0.5 * h)[:, None]
    inc = icoef.sum(axis=1)  # T_k(1) = 1
    if np.any(inc < 0):
        raise JacobLadderError("negative ladder increment on some panel")
    phi_edges = anchor[1] + np.concatenate([[0.0], np.cumsum(inc)])
    for arr in (edges, phi_edges, dcoef, icoef, values):
        arr.setflags(write=False)
    return LadderTable(order=order, edges=edges, phi_edges=phi_edges, dcoef=dcoef,
                       icoef=icoef, node_values=values, anchor=anchor, tol=tol,
                       degree=degree, derivative_def=derivative_def)


def build_ladder(order: int, t_min: float, t_max: float, tol: float = 1e-10,
                 acc: EvalAccuracy = DEFAULT_ACCURACY, degree: Optional[int] = None,
                 max_splits: int = 12) -> LadderTable:
    """Build a ladder table of the given order on ``[t_min, t_max]``.

    Anchored so that t_min - phi(t_min) = (1 - gamma) pi(t_min).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if not (LADDER_T_MIN <= t_min < t_max <= LADDER_T_MAX):
        raise DomainError(
            f"need {LADDER_T_MIN:g} <= t_min < t_max <= {LADDER_T_MAX:g}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    degree = degree or DEFAULT_DEGREE[order]
    deriv = _derivative(order, acc)
    edges = _panel_edges(float(t_min), float(t_max))
    lo, hi = edges[:-1], edges[1:]
    vals = deriv(_node_times(lo, hi, degree))
    history = []
    for _ in range(max_splits + 1):
        coef = _fit(vals, degree)
        tail = np.abs(coef[:, -1]) + np.abs(coef[:, -2])
        bad = tail * (hi - lo) > tol
        if not np.any(bad):
            break
        history.append(int(bad.sum()))
        # refinement that spreads instead of converging has hit the noise floor
        if len(history) >= 3 and history[-1] > 8 and history[-1] >= 1.5 * history[-3]:
            break
        m = 0.5 * (lo[bad] + hi[bad])
        nlo = np.concatenate([lo[~bad], lo[bad], m])
        nhi = np.concatenate([hi[~bad], m, hi[bad]])
        nvals = np.concatenate([vals[~bad], deriv(_node_times(np.concatenate([lo[bad], m]),
                                                              np.concatenate([m, hi[bad]]),
                                                              degree))])
        order_ = np.argsort(nlo, kind="stable")
        lo, hi, vals = nlo[order_], nhi[order_], nvals[order_]
    if np.any(bad):
        # the Chebyshev tail has hit the noise floor of the Z evaluations
        raise AccuracyUnreachableError(
            f"ladder panels still above tol={tol:g} after {len(history)} bisection rounds; "
            f"the derivative data are not that accurate here")
    edges = np.concatenate([lo, hi[-1:]])
    anchor_phi = float(t_min) - (1.0 - EULER_GAMMA) * prime_pi(t_min)
    return _assemble(order, edges, np.ascontiguousarray(vals), degree,
                     (float(t_min), anchor_phi), float(tol), DERIVATIVE_DEFS[order])


def ladder_value(L: LadderTable, t):
    return L.value(t)


def ladder_inverse(L: LadderTable, x):
    return L.inverse(x)


def lag_ratio(L: LadderTable, t: float) -> float:
    """(t - phi(t)) / ((1 - gamma) pi(t)); tends to 1 for the true ladder."""
    return (t - L.value(t)) / ((1.0 - EULER_GAMMA) * prime_pi(t))


# ------------------------------------------------------ substitution

@dataclass(frozen=True)
class SubstitutionResult:
    lhs: float
    rhs: float
    lhs_error: float
    rhs_error: float
    endpoint_error: float
    lo: float
    hi: float
    conditioning_error: float = 0.0

    @property
    def error_budget(self) -> float:
        return self.lhs_error + self.rhs_error + self.endpoint_error + self.conditioning_error


def _ulp_sensitivity(g, a, b, hint):
    # error from evaluating g at abscissae known only to ~2 ulp: 2 ulp(b) * int |g'|
    s = 1e-6

    def slope(x):
        return np.abs(g(x) - g(x - s)) / s

    q = integrate(slope, a, b, rel_tol=1e-3, min_wavelength_hint=hint)
    return 2.0 * float(np.spacing(b)) * (q.value + q.error_estimate)


def substitution_check(L: LadderTable, f: Callable, T: float, U: float,
                       rel_tol: float = 1e-10, enforce_u_bound: bool = True) -> SubstitutionResult:
    """Both sides of the change of variables through the ladder.

    lhs = int over [phi^-1(T), phi^-1(T+U)] of f(phi(t)) phi'(t) dt,
    rhs = int_T^{T+U} f(x) dx.  ``f`` must be vectorised.

    Besides the two quadrature estimates, the budget carries the endpoint
    mismatch |f| * |phi(phi^-1(x)) - x| and a conditioning term: t and phi
    are only known to about an ulp, and where phi' is large the integrand
    moves by ulp(t) * |d/dt integrand|, which the Gauss-Kronrod estimate
    cannot see.
    """
    if not U > 0:
        raise PreconditionError("U must be positive")
    if enforce_u_bound and U > T / math.log(T):
        raise PreconditionError(f"U={U} exceeds T/log T = {T / math.log(T):.6g}")
    if not L.covers_image(T, T + U):
        raise CoverageError(
            f"ladder image [{L.phi_min:.6g}, {L.phi_max:.6g}] does not contain "
            f"[{T}, {T + U}]", covered=(L.phi_min, L.phi_max))
    lo = L.inverse(T)
    hi = L.inverse(T + U)
    hint = 2.0 * math.pi / math.log(lo / (2.0 * math.pi))

    def integrand(t):
        return f(L.value(t)) * L.derivative(t)

    left = integrate(integrand, lo, hi, rel_tol=rel_tol, min_wavelength_hint=hint,
                     abs_tol=rel_tol * U * 1e-3)
    right = integrate(f, T, T + U, rel_tol=rel_tol, min_wavelength_hint=hint,
                      abs_tol=rel_tol * U * 1e-3)
    ends = np.array([T, T + U])
    fe = np.abs(np.asarray(f(ends), dtype=float) * np.ones(2))
    mism = np.abs(np.array([L.value(lo), L.value(hi)]) - ends)
    cond = _ulp_sensitivity(integrand, lo, hi, hint) + _ulp_sensitivity(f, T, T + U, hint)
    return SubstitutionResult(left.value, right.value, left.error_estimate,
                              right.error_estimate, float(fe @ mism), lo, hi, cond)


# ------------------------------------------------------ serialisation

def save_ladder(L: LadderTable, path) -> None:
    """Write a one-line JSON header (``# {...}``) followed by CSV rows
    (t, phi, phi_prime) at every Chebyshev-Lobatto node."""
    d = L.degree
    lo, hi = L.edges[:-1], L.edges[1:]
    t = _node_times(lo, hi, d)
    phi = np.empty_like(t)
    x = _lobatto(d)
    for j in range(d + 1):
        phi[:, j] = L.phi_edges[:-1] + _chebval_rows(np.full(lo.size, x[j]), L.icoef)
    phi[:, -1] = L.phi_edges[1:]
    # shared panel ends appear once
    rows_t = np.concatenate([t[:, :-1].ravel(), [L.t_max]])
    rows_phi = np.concatenate([phi[:, :-1].ravel(), [L.phi_max]])
    rows_d = np.concatenate([L.node_values[:, :-1].ravel(), [L.node_values[-1, -1]]])
    header = {
        "format": _FORMAT, "order": L.order, "anchor": list(L.anchor),
        "tolerance": L.tol, "derivative_def": L.derivative_def, "degree": d,
        "t_min": L.t_min, "t_max": L.t_max, "n_panels": L.n_panels,
    }
    buf = io.StringIO()
    buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "phi", "phi_prime"])
    for a, b, c in zip(rows_t, rows_phi, rows_d):
        w.writerow([repr(float(a)), repr(float(b)), repr(float(c))])
    Path(path).write_text(buf.getvalue())


def load_ladder(path) -> LadderTable:
    """Read a table written by :func:`save_ladder`.

    The table is rebuilt from the stored phi' samples; the stored phi column
    must agree with the rebuilt one.
    """
    text = Path(path).read_text()
    first, _, rest = text.partition("\n")
    if not first.startswith("# "):
        raise TableFormatError(f"{path}: missing JSON header line")
    try:
        header = json.loads(first[2:])
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: bad header: {exc}") from None
    if header.get("format") != _FORMAT:
        raise TableFormatError(f"{path}: unsupported format {header.get('format')!r}")
    try:
        data = np.loadtxt(io.StringIO(rest), delimiter=",", skiprows=1, ndmin=2)
    except ValueError as exc:
        raise TableFormatError(f"{path}: {exc}") from None
    d = int(header["degree"])
    n = int(header["n_panels"])
    if data.shape[0] != n * d + 1:
        raise TableFormatError(f"{path}: expected {n * d + 1} rows, found {data.shape[0]}")
    edges = data[::d, 0].copy()
    idx = np.arange(n)[:, None] * d + np.arange(d + 1)[None, :]
    values = data[idx, 2]
    L = _assemble(int(header["order"]), edges, np.ascontiguousarray(values), d,
                  tuple(header["anchor"]), float(header["tolerance"]),
                  header["derivative_def"])
    drift = np.max(np.abs(L.value(data[:, 0]) - data[:, 1]))
    if drift > 1e-9 * max(1.0, abs(L.phi_max)):
        raise TableFormatError(f"{path}: stored phi inconsistent with phi_prime (drift {drift:.3g})")
    return L
