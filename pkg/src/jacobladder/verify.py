"""Both sides of the two integral equations and of every step in between.

Each check yields a :class:`VerificationRecord`.  Kinds:

=====================  ==================================================
``thm1``               int J1[phi1] |zeta|^2 vs 2 sqrt(2pi)/sqrt(t) sin(t - pi/4)
``thm1_exact_midchain`` int J1[phi1] phi1' vs J0(t_nu) - J0(t_{nu+1})  (exact)
``chain36``            1/sqrt(t_{nu+1}) vs 1/sqrt(t_nu)
``chain37``            J0(t_nu) - J0(t_{nu+1}) vs its leading asymptotic form
``chain38``            cos(t_nu - pi/4) - cos(t_{nu+1} - pi/4) vs (2pi/log t) sin(t_nu - pi/4)
``chain39``            int J1[phi1] phi1' vs 2 sqrt(2pi)/(sqrt(t) log t) sin(t - pi/4)
``thm2``               int |zeta(phi2)|^4 |zeta|^4 vs U log^8 T / (4 pi^4)
``thm2_midchain``      int |zeta(phi2)|^4 phi2' vs int_T^{T+U} |zeta|^4  (exact)
=====================  ==================================================

``scaled_residual`` multiplies the residual by the rate at which it is
expected to stay bounded (see ``SCALE``).
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, List, Literal, Optional, Sequence

import numpy as np

from .bessel import BesselZeroTable, j0, j0_asymptotic_difference, j1, j1_definite_integral, j1_zeros
from .errors import (CoverageError, InadmissibleIntervalError, JacobLadderError,
                     PreconditionError)
from .gram import DEFAULT_EPSILON, classify_interval, gram_points
from .ladder import LadderTable
from .quad import QuadratureResult, integrate
from .rs_theta_zeta import DEFAULT_ACCURACY, EvalAccuracy, hardy_z

__all__ = [
    "VerificationRecord",
    "CampaignSpec",
    "RATIO_GUARD",
    "thm1_rhs",
    "thm1_lhs",
    "thm1_verify",
    "thm1_records",
    "chain_check_36",
    "chain_check_37_38",
    "thm2_verify",
    "thm2_records",
    "run_campaign",
    "records_to_csv",
    "summarize",
    "summary_json",
]

RATIO_GUARD = 1e-12
THM1_REL_TOL = 1e-9
THM2_REL_TOL = 1e-7
SQRT_2PI = math.sqrt(2.0 * math.pi)
QUARTER_PI = 0.25 * math.pi

# residual * SCALE[kind](t) should stay bounded as t grows
SCALE = {
    "chain36": lambda t: t ** 1.5 * math.log(t),
    "chain37": lambda t: t ** 1.5,
    "chain38": lambda t: math.log(t) ** 2,
    "chain39": lambda t: math.sqrt(t) * math.log(t) ** 2,
}

Kind = Literal["thm1", "thm1_exact_midchain", "chain36", "chain37", "chain38",
               "chain39", "thm2", "thm2_midchain"]


@dataclass(frozen=True)
class VerificationRecord:
    kind: str
    nu: Optional[int] = None
    t: float = math.nan
    T: float = math.nan
    U: float = math.nan
    epsilon: float = math.nan
    mode: str = ""
    lhs: float = math.nan
    rhs: float = math.nan
    ratio: float = math.nan
    residual: float = math.nan
    scaled_residual: float = math.nan
    identity_residual: float = math.nan
    quad_error: float = math.nan
    admissible: Optional[bool] = None
    flagged: bool = False
    error: str = ""


def _record(kind, lhs, rhs, *, suppress_ratio=False, scale=None, **kw):
    flagged = suppress_ratio or abs(rhs) < RATIO_GUARD or not math.isfinite(rhs)
    ratio = math.nan if flagged else lhs / rhs
    residual = lhs - rhs
    scaled = residual * scale if scale is not None else math.nan
    return VerificationRecord(kind=kind, lhs=float(lhs), rhs=float(rhs), ratio=ratio,
                              residual=float(residual), scaled_residual=scaled,
                              flagged=bool(flagged), **kw)


def _gram_pair(nu, t_pair=None):
    if t_pair is not None:
        return float(t_pair[0]), float(t_pair[1])
    a, b = gram_points(np.array([nu, nu + 1]))
    return float(a), float(b)


def _gram_wavelength(t):
    return 2.0 * math.pi / math.log(t / (2.0 * math.pi))


# --------------------------------------------------------------- thm 1

def thm1_rhs(nu: Optional[int] = None, t: Optional[float] = None) -> float:
    """2 sqrt(2pi) / sqrt(t_nu) * sin(t_nu - pi/4).  Pass ``t`` to skip the solve."""
    if t is None:
        if nu is None or nu < 1:
            raise PreconditionError("need nu >= 1 or an explicit abscissa t")
        t = _gram_pair(nu)[0]
    return 2.0 * SQRT_2PI / math.sqrt(t) * math.sin(t - QUARTER_PI)


def _thm1_limits(L, t_lo, t_hi):
    if not L.covers_image(t_lo, t_hi):
        raise CoverageError(
            f"ladder image [{L.phi_min:.6g}, {L.phi_max:.6g}] does not contain "
            f"[{t_lo:.6g}, {t_hi:.6g}]; ladder t-range [{L.t_min:.6g}, {L.t_max:.6g}]",
            covered=(L.phi_min, L.phi_max))
    lo, hi = L.inverse(np.array([t_lo, t_hi]))
    return float(lo), float(hi)


def thm1_lhs(L: LadderTable, nu: int, weight: Literal["zeta", "ladder"] = "zeta",
             rel_tol: float = THM1_REL_TOL, acc: EvalAccuracy = DEFAULT_ACCURACY,
             t_pair=None) -> QuadratureResult:
    """Integral of J1[phi1(t)] * w(t) over [phi1^-1(t_nu), phi1^-1(t_{nu+1})].

    ``weight="zeta"`` uses w = |zeta(1/2+it)|^2; ``weight="ladder"`` uses the
    table's own derivative phi1'.  The returned error estimate includes the
    mismatch of the inverted endpoints.
    """
    if L.order != 1:
        raise PreconditionError("the J1 integral check needs a first-order ladder")
    t_lo, t_hi = _gram_pair(nu, t_pair)
    if t_hi == t_lo:
        return QuadratureResult(0.0, 0.0, 1, 0)
    lo, hi = _thm1_limits(L, t_lo, t_hi)
    if weight == "zeta":
        def f(t):
            z = hardy_z(t, acc)
            return j1(L.value(t)) * z * z
    elif weight == "ladder":
        def f(t):
            return j1(L.value(t)) * L.derivative(t)
    else:
        raise ValueError(f"unknown weight {weight!r}")
    q = integrate(f, lo, hi, rel_tol=rel_tol, min_wavelength_hint=_gram_wavelength(lo),
                  abs_tol=rel_tol * 1e-6 / math.sqrt(t_lo))
    mism = np.abs(L.value(np.array([lo, hi])) - np.array([t_lo, t_hi]))
    w_end = np.abs(f(np.array([lo, hi])) / np.maximum(L.derivative(np.array([lo, hi])), 1e-300))
    if weight == "ladder":
        w_end = np.abs(j1(np.array([t_lo, t_hi])))
    endpoint = float(np.dot(np.minimum(w_end, 1e6), mism))
    return QuadratureResult(q.value, q.error_estimate + endpoint, q.panels, q.evaluations)


def thm1_records(L: LadderTable, nu: int, epsilon: float = DEFAULT_EPSILON,
                 mode: str = "paper_literal", zeros: Optional[BesselZeroTable] = None,
                 force: bool = False, rel_tol: float = THM1_REL_TOL,
                 acc: EvalAccuracy = DEFAULT_ACCURACY, t_pair=None) -> List[VerificationRecord]:
    """Records ``thm1``, ``thm1_exact_midchain`` and ``chain39`` for one nu."""
    t_lo, t_hi = _gram_pair(nu, t_pair)
    cls = classify_interval(nu, epsilon, zeros, mode, t_pair=(t_lo, t_hi))
    if not cls.admissible and not force:
        raise InadmissibleIntervalError(
            f"[t_{nu}, t_{nu + 1}] = [{t_lo:.9g}, {t_hi:.9g}] is not admissible "
            f"(inside cell: {cls.inside_bessel_cell}, clears zones: "
            f"{cls.clears_exclusion_zone}); pass force=True to evaluate anyway")
    common = dict(nu=int(nu), t=t_lo, epsilon=float(epsilon), mode=mode,
                  admissible=cls.admissible)
    full = thm1_lhs(L, nu, "zeta", rel_tol, acc, (t_lo, t_hi))
    weighted = thm1_lhs(L, nu, "ladder", rel_tol, acc, (t_lo, t_hi))
    exact = j1_definite_integral(t_lo, t_hi)
    suppress = not cls.clears_exclusion_zone
    return [
        _record("thm1", full.value, thm1_rhs(t=t_lo), suppress_ratio=suppress,
                quad_error=full.error_estimate, **common),
        _record("thm1_exact_midchain", weighted.value, exact,
                quad_error=weighted.error_estimate, **common),
        _record("chain39", weighted.value,
                2.0 * SQRT_2PI / (math.sqrt(t_lo) * math.log(t_lo)) * math.sin(t_lo - QUARTER_PI),
                suppress_ratio=suppress, scale=SCALE["chain39"](t_lo),
                quad_error=weighted.error_estimate, **common),
    ]


def thm1_verify(L: LadderTable, nu: int, epsilon: float = DEFAULT_EPSILON,
                mode: str = "paper_literal", zeros: Optional[BesselZeroTable] = None,
                force: bool = False, rel_tol: float = THM1_REL_TOL,
                acc: EvalAccuracy = DEFAULT_ACCURACY) -> VerificationRecord:
    """The ``thm1`` record for Gram interval nu (raises if inadmissible unless forced)."""
    return thm1_records(L, nu, epsilon, mode, zeros, force, rel_tol, acc)[0]


# --------------------------------------------------------------- chain

def chain_check_36(nu: int, t_pair=None) -> VerificationRecord:
    t0, t1 = _gram_pair(nu, t_pair)
    return _record("chain36", 1.0 / math.sqrt(t1), 1.0 / math.sqrt(t0),
                   scale=SCALE["chain36"](t0), nu=int(nu), t=t0)


def chain_check_37_38(nu: int, t_pair=None):
    """Records for the J0 asymptotic step and the cosine-difference step.

    The ``chain38`` record carries in ``identity_residual`` the largest
    deviation among the exact product-to-sum rewrites of the cosine
    difference (pure trigonometry, expected at roundoff level).
    """
    t0, t1 = _gram_pair(nu, t_pair)
    a = _record("chain37", j1_definite_integral(t0, t1), j0_asymptotic_difference(t0, t1),
                scale=SCALE["chain37"](t0), nu=int(nu), t=t0)
    d = t1 - t0
    cos_diff = math.cos(t0 - QUARTER_PI) - math.cos(t1 - QUARTER_PI)
    line1 = 2.0 * math.sin(0.5 * d) * math.sin(0.5 * (t1 + t0) - QUARTER_PI)
    line2 = 2.0 * math.sin(0.5 * d) * math.sin(0.5 * d + t0 - QUARTER_PI)
    line3 = (2.0 * math.sin(0.5 * d) ** 2 * math.cos(t0 - QUARTER_PI)
             + math.sin(d) * math.sin(t0 - QUARTER_PI))
    ident = max(abs(cos_diff - line1), abs(cos_diff - line2), abs(cos_diff - line3))
    b = _record("chain38", cos_diff, 2.0 * math.pi / math.log(t0) * math.sin(t0 - QUARTER_PI),
                scale=SCALE["chain38"](t0), nu=int(nu), t=t0, identity_residual=ident)
    return a, b


# --------------------------------------------------------------- thm 2

def thm2_records(L2: LadderTable, T: float, U: float, rel_tol: float = THM2_REL_TOL,
                 acc: EvalAccuracy = DEFAULT_ACCURACY,
                 limits_ladder: Optional[LadderTable] = None,
                 enforce_u_bound: bool = True) -> List[VerificationRecord]:
    """Records ``thm2`` and ``thm2_midchain`` for the window [T, T+U].

    Limits are phi2^{-1}(T), phi2^{-1}(T+U); passing a first-order table as
    ``limits_ladder`` uses its inverse for the limits instead.
    """
    if L2.order != 2:
        raise PreconditionError("the eighth-power check needs a second-order ladder")
    if U < 0:
        raise PreconditionError("U must be >= 0")
    if enforce_u_bound and U > T / math.log(T):
        raise PreconditionError(f"U={U} exceeds T/log T = {T / math.log(T):.6g}")
    rhs = U * math.log(T) ** 8 / (4.0 * math.pi ** 4)
    common = dict(T=float(T), U=float(U), t=float(T),
                  mode="phi1_limits" if limits_ladder is not None else "phi2_limits")
    if U == 0:
        return [VerificationRecord("thm2", lhs=0.0, rhs=0.0, residual=0.0, quad_error=0.0,
                                   flagged=True, **common),
                VerificationRecord("thm2_midchain", lhs=0.0, rhs=0.0, residual=0.0,
                                   quad_error=0.0, flagged=True, **common)]
    lim = limits_ladder if limits_ladder is not None else L2
    if not lim.covers_image(T, T + U):
        raise CoverageError(
            f"ladder image [{lim.phi_min:.6g}, {lim.phi_max:.6g}] does not contain "
            f"[{T}, {T + U}]", covered=(lim.phi_min, lim.phi_max))
    lo, hi = (float(v) for v in lim.inverse(np.array([T, T + U])))
    if not L2.covers(lo, hi):
        raise CoverageError(f"order-2 ladder does not cover [{lo:.6g}, {hi:.6g}]",
                            covered=(L2.t_min, L2.t_max))
    hint = _gram_wavelength(lo)

    def full(t):
        za = hardy_z(L2.value(t), acc) ** 2
        zb = hardy_z(t, acc) ** 2
        return za * za * zb * zb

    def mid(t):
        za = hardy_z(L2.value(t), acc) ** 2
        return za * za * L2.derivative(t)

    def plain(y):
        z = hardy_z(y, acc) ** 2
        return z * z

    q_full = integrate(full, lo, hi, rel_tol=rel_tol, min_wavelength_hint=hint)
    q_mid = integrate(mid, lo, hi, rel_tol=rel_tol, min_wavelength_hint=hint)
    q_plain = integrate(plain, T, T + U, rel_tol=rel_tol,
                        min_wavelength_hint=_gram_wavelength(T))
    mism = np.abs(L2.value(np.array([lo, hi])) - np.array([T, T + U]))
    endpoint = float(np.dot(plain(np.array([T, T + U])), mism))
    return [
        _record("thm2", q_full.value, rhs, quad_error=q_full.error_estimate, **common),
        _record("thm2_midchain", q_mid.value, q_plain.value,
                quad_error=q_mid.error_estimate + q_plain.error_estimate + endpoint, **common),
    ]


def thm2_verify(L2: LadderTable, T: float, U: float, rel_tol: float = THM2_REL_TOL,
                acc: EvalAccuracy = DEFAULT_ACCURACY,
                limits_ladder: Optional[LadderTable] = None) -> VerificationRecord:
    return thm2_records(L2, T, U, rel_tol, acc, limits_ladder)[0]


# ------------------------------------------------------------ campaigns

@dataclass(frozen=True)
class CampaignSpec:
    """Parameters of a batch run.

    ``kind`` is ``thm1`` (records thm1, thm1_exact_midchain, chain39 per nu),
    ``chain`` (chain36..38 per nu) or ``thm2`` (one window per entry of
    ``T_values``).
    """

    kind: Literal["thm1", "chain", "thm2"]
    nu_from: int = 1
    nu_to: int = 0
    nu_step: int = 1
    epsilon: float = DEFAULT_EPSILON
    mode: str = "paper_literal"
    admissible_only: bool = False
    rel_tol: Optional[float] = None
    T_values: tuple = ()
    U: float = 0.0
    phi1_limits: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.kind not in ("thm1", "chain", "thm2"):
            raise ValueError(f"unknown campaign kind {self.kind!r}")
        if self.nu_step < 1:
            raise ValueError("nu_step must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def nus(self) -> np.ndarray:
        return np.arange(self.nu_from, self.nu_to + 1, self.nu_step)


def _error_record(kind, msg, **kw):
    return VerificationRecord(kind=kind, error=msg, flagged=True, **kw)


def _thm1_chunk(args):
    L, nus, spec, zeros = args
    out = []
    tt = gram_points(np.concatenate([nus, nus[-1:] + 1])) if nus.size else np.array([])
    rel = spec.rel_tol or THM1_REL_TOL
    for i, nu in enumerate(nus):
        pair = (tt[i], gram_points(np.array([nu + 1]))[0] if spec.nu_step > 1 else tt[i + 1])
        try:
            if spec.admissible_only:
                cls = classify_interval(int(nu), spec.epsilon, zeros, spec.mode, t_pair=pair)
                if not cls.admissible:
                    continue
            out.extend(thm1_records(L, int(nu), spec.epsilon, spec.mode, zeros, True,
                                    rel, t_pair=pair))
        except JacobLadderError as exc:
            out.append(_error_record("thm1", f"{type(exc).__name__}: {exc}", nu=int(nu),
                                     t=float(pair[0]), epsilon=spec.epsilon, mode=spec.mode))
    return out


def _chain_chunk(args):
    nus = args
    out = []
    t0 = gram_points(nus)
    t1 = gram_points(nus + 1)
    for nu, a, b in zip(nus, t0, t1):
        out.append(chain_check_36(int(nu), (a, b)))
        out.extend(chain_check_37_38(int(nu), (a, b)))
    return out


def _thm2_one(args):
    L2, L1, T, spec = args
    U = spec.U
    try:
        return thm2_records(L2, T, U, spec.rel_tol or THM2_REL_TOL,
                            limits_ladder=L1 if spec.phi1_limits else None)
    except JacobLadderError as exc:
        return [_error_record("thm2", f"{type(exc).__name__}: {exc}", T=float(T), U=float(U))]


def _fan_out(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def run_campaign(spec: CampaignSpec, ladder: Optional[LadderTable] = None,
                 zeros: Optional[BesselZeroTable] = None,
                 ladder1: Optional[LadderTable] = None) -> List[VerificationRecord]:
    """Evaluate a campaign; output order is by parameter, independent of ``jobs``.

    Per-parameter failures become records with a non-empty ``error`` field.
    """
    if spec.kind == "thm2":
        if not spec.T_values:
            return []
        if ladder is None:
            raise PreconditionError("thm2 campaign needs a second-order ladder")
        tasks = [(ladder, ladder1, float(T), spec) for T in spec.T_values]
        parts = _fan_out(_thm2_one, tasks, spec.jobs)
        return [r for p in parts for r in p]
    nus = spec.nus
    if nus.size == 0:
        return []
    chunks = np.array_split(nus, max(1, min(spec.jobs * 4, nus.size))) if spec.jobs > 1 else [nus]
    if spec.kind == "chain":
        parts = _fan_out(_chain_chunk, chunks, spec.jobs)
    else:
        if ladder is None:
            raise PreconditionError("thm1 campaign needs a first-order ladder")
        if zeros is None:
            t_end = float(gram_points(np.array([nus[-1] + 1]))[0])
            zeros = j1_zeros(int(t_end / math.pi) + 2)
        parts = _fan_out(_thm1_chunk, [(ladder, c, spec, zeros) for c in chunks], spec.jobs)
    return [r for p in parts for r in p]


# ---------------------------------------------------------------- output

FIELDS = [f.name for f in fields(VerificationRecord)]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def records_to_csv(records: Iterable[VerificationRecord], stream=None) -> str:
    """CSV with a header row and 17 significant digits; returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_fmt(getattr(r, k)) for k in FIELDS])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def _quartiles(x):
    if x.size == 0:
        return None
    q1, med, q3 = np.percentile(x, [25, 50, 75])
    return {"count": int(x.size), "q1": float(q1), "median": float(med), "q3": float(q3)}


def summarize(records: Sequence[VerificationRecord]) -> dict:
    """Median and quartiles of |ratio - 1| and max |scaled_residual| per kind and decade of t."""
    out = {}
    by = {}
    for r in records:
        if r.error or not math.isfinite(r.t) or r.t <= 0:
            continue
        decade = int(math.floor(math.log10(r.t)))
        by.setdefault((r.kind, decade), []).append(r)
    for (kind, decade), rs in sorted(by.items()):
        dev = np.array([abs(r.ratio - 1.0) for r in rs if math.isfinite(r.ratio)])
        sc = np.array([abs(r.scaled_residual) for r in rs if math.isfinite(r.scaled_residual)])
        entry = {"records": len(rs), "abs_ratio_minus_1": _quartiles(dev)}
        if sc.size:
            entry["max_abs_scaled_residual"] = float(sc.max())
        out.setdefault(kind, {})[f"1e{decade}"] = entry
    return out


def summary_json(records) -> str:
    return json.dumps(summarize(records), indent=2, sort_keys=True) + "\n"
