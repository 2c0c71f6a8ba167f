"""Command-line entry point: ``jacobladder <command> ...``.

Exit status is 0 on success, 1 on a usage error and 2 on a numerical or
coverage failure.  Tables go to ``--out`` (default stdout) as CSV with 17
significant digits.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import verify as V
from .bessel import j1_zeros
from .errors import JacobLadderError
from .gram import DEFAULT_EPSILON, classify_interval, gram_points, spacing_residuals
from .ladder import build_ladder, lag_ratio, load_ladder, save_ladder
from .oracle import ENV_VAR, oracle_check

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"\n{self.prog}: error: {message}\n")


def _default_jobs():
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _f(x):
    return format(float(x), ".17g")


def _write_rows(path, header, rows):
    with _output(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


# ------------------------------------------------------------------ gram

def cmd_gram_list(a):
    if a.to < a.from_ or a.from_ < 1:
        raise UsageError("need 1 <= --from <= --to")
    nus = np.arange(a.from_, a.to + 1)
    res, t = spacing_residuals(nus)
    t_next = gram_points(nus + 1)
    zeros = j1_zeros(int(t_next[-1] / math.pi) + 2)
    rows = []
    for nu, t0, t1, r in zip(nus, t, t_next, res):
        c = classify_interval(int(nu), a.epsilon, zeros, a.mode, t_pair=(t0, t1))
        rows.append([str(nu), _f(t0), _f(t1 - t0), _f(r), str(c.admissible).lower(),
                     str(c.containing_bessel_index or 0), _f(c.sin_magnitude)])
    _write_rows(a.out, ["nu", "t", "spacing", "residual", "admissible", "cell_index",
                        "sin_magnitude"], rows)


# ---------------------------------------------------------------- bessel

def cmd_bessel_zeros(a):
    if a.count < 1:
        raise UsageError("--count must be >= 1")
    table = j1_zeros(a.count)
    res = table.residuals()
    rows = [[str(n), _f(mu), _f(r)] for n, mu, r in zip(range(1, a.count + 1), table.zeros, res)]
    _write_rows(a.out, ["n", "mu", "j1_residual"], rows)


# ---------------------------------------------------------------- ladder

def cmd_ladder_build(a):
    L = build_ladder(a.order, a.t_min, a.t_max, tol=a.tol)
    save_ladder(L, a.out)
    print(f"order {L.order}: {L.n_panels} panels on [{L.t_min:g}, {L.t_max:g}], "
          f"image [{L.phi_min:.9g}, {L.phi_max:.9g}] -> {a.out}", file=sys.stderr)


def cmd_ladder_series(a):
    L = load_ladder(a.ladder)
    lo = max(a.t_from, L.t_min) if a.t_from is not None else L.t_min
    hi = min(a.t_to, L.t_max) if a.t_to is not None else L.t_max
    if not lo < hi or a.points < 2:
        raise UsageError("empty range or fewer than 2 points")
    t = np.linspace(lo, hi, a.points)
    phi, dphi = L.value(t), L.derivative(t)
    rows = []
    for ti, p, d in zip(t, phi, dphi):
        lag = lag_ratio(L, ti) if L.order == 1 else math.nan
        rows.append([_f(ti), _f(p), _f(d), _f(ti - p), _f(lag)])
    _write_rows(a.out, ["t", "phi", "phi_prime", "t_minus_phi", "lag_ratio"], rows)


# ---------------------------------------------------------------- verify

def _emit_records(a, records):
    with _output(a.out) as fh:
        V.records_to_csv(records, fh)
    if a.summary:
        with _output(a.summary) as fh:
            fh.write(V.summary_json(records))
    failed = [r for r in records if r.error]
    if failed:
        print(f"{len(failed)} record(s) failed; first: nu={failed[0].nu} T={failed[0].T}: "
              f"{failed[0].error}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _range_report(needed_lo, needed_hi, ladder_path, L=None):
    suggest = 1.3 * needed_hi + 200.0
    have = "no --ladder given" if L is None else (
        f"{ladder_path} maps [{L.t_min:g}, {L.t_max:g}] onto [{L.phi_min:.6g}, {L.phi_max:.6g}]")
    return (f"ladder image must contain [{needed_lo:.9g}, {needed_hi:.9g}]; {have}.\n"
            f"build one with: jacobladder ladder build --order 1 --t-min 10 "
            f"--t-max {math.ceil(suggest)} --out ladder1.csv")


def cmd_verify_thm1(a):
    if a.nu_to < a.nu_from or a.nu_from < 1:
        raise UsageError("need 1 <= --nu-from <= --nu-to")
    lo, hi = gram_points(np.array([a.nu_from, a.nu_to + 1]))
    L = load_ladder(a.ladder) if a.ladder else None
    if L is None or not L.covers_image(lo, hi):
        print(_range_report(lo, hi, a.ladder, L), file=sys.stderr)
        return EXIT_NUMERIC
    if L.order != 1:
        raise UsageError("verify thm1 needs a first-order ladder")
    spec = V.CampaignSpec("thm1", a.nu_from, a.nu_to, a.nu_step, a.epsilon, a.mode,
                          a.admissible_only, a.rel_tol, jobs=a.jobs)
    return _emit_records(a, V.run_campaign(spec, L))


def cmd_verify_chain(a):
    if a.nu_to < a.nu_from or a.nu_from < 1:
        raise UsageError("need 1 <= --nu-from <= --nu-to")
    spec = V.CampaignSpec("chain", a.nu_from, a.nu_to, a.nu_step, jobs=a.jobs)
    return _emit_records(a, V.run_campaign(spec))


def cmd_verify_thm2(a):
    L2 = load_ladder(a.ladder)
    if L2.order != 2:
        raise UsageError("verify thm2 needs a second-order --ladder")
    L1 = load_ladder(a.phi1_limits) if a.phi1_limits else None
    if L1 is not None and L1.order != 1:
        raise UsageError("--phi1-limits needs a first-order ladder")
    spec = V.CampaignSpec("thm2", rel_tol=a.rel_tol, T_values=tuple(a.T), U=a.U,
                          phi1_limits=L1 is not None, jobs=a.jobs)
    return _emit_records(a, V.run_campaign(spec, L2, ladder1=L1))


# ---------------------------------------------------------------- oracle

def cmd_oracle_check(a):
    report = oracle_check(a.fixtures)
    with _output(a.out) as fh:
        for line in report.lines():
            fh.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_NUMERIC


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jacobladder",
                description="Jacob's ladders, Gram points, Bessel zeros and checks of the "
                            "integral identities built on them.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def out(sp):
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    def jobs(sp):
        sp.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="worker processes for the campaign (default: available cores)")

    g = sub.add_parser("gram", help="Gram points t_nu, theta(t_nu) = pi*nu")
    gs = g.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    gs.required = True
    gl = gs.add_parser(
        "list", help="list Gram points with spacing and admissibility",
        description="Gram points t_nu with theta(t_nu) = pi*nu.  'spacing' is t_{nu+1} - t_nu "
                    "and 'residual' subtracts the two-term law 2pi/log t + 2pi log(2pi)/log^2 t. "
                    "'admissible' means [t_nu, t_{nu+1}] lies in one cell between consecutive "
                    "J1 zeros and keeps --epsilon away from the exclusion lattice.")
    gl.add_argument("--from", dest="from_", type=int, required=True, metavar="NU")
    gl.add_argument("--to", type=int, required=True, metavar="NU")
    gl.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    gl.add_argument("--mode", choices=["paper_literal", "sin_zeros"], default="paper_literal",
                    help="exclusion lattice: k*pi (paper_literal) or k*pi + pi/4 (sin_zeros)")
    out(gl)
    gl.set_defaults(func=cmd_gram_list)

    b = sub.add_parser("bessel", help="zeros of J1")
    bs = b.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    bs.required = True
    bz = bs.add_parser("zeros", help="first N positive zeros of J1",
                       description="First N positive zeros mu_n of J1, whose spacing tends to "
                                   "pi; j1_residual is |J1(mu_n)|.")
    bz.add_argument("--count", type=int, required=True, metavar="N")
    out(bz)
    bz.set_defaults(func=cmd_bessel_zeros)

    la = sub.add_parser("ladder", help="build and tabulate Jacob's ladders")
    las = la.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    las.required = True
    lb = las.add_parser(
        "build", help="tabulate phi_1 or phi_2",
        description="Integrate phi_1' = Z^2/log t (order 1) or phi_2' = 2 pi^2 Z^4/log^4 t "
                    "(order 2) from the anchor phi(t0) = t0 - (1-c) pi(t0), c being Euler's "
                    "constant and pi(t) the prime counting function.  The table stores "
                    "t, phi, phi_prime at every interpolation node.")
    lb.add_argument("--order", type=int, choices=[1, 2], required=True)
    lb.add_argument("--t-min", type=float, default=10.0)
    lb.add_argument("--t-max", type=float, required=True)
    lb.add_argument("--tol", type=float, default=1e-10, help="absolute accuracy of phi")
    lb.add_argument("--out", required=True, help="table file to write")
    lb.set_defaults(func=cmd_ladder_build)
    lsr = las.add_parser("series", help="sample a saved ladder on a uniform grid",
                         description="Plot-ready samples t, phi, phi', t - phi and the lag ratio "
                                     "(t - phi_1)/((1-c) pi(t)).")
    lsr.add_argument("--ladder", required=True)
    lsr.add_argument("--t-from", type=float)
    lsr.add_argument("--t-to", type=float)
    lsr.add_argument("--points", type=int, default=1000)
    out(lsr)
    lsr.set_defaults(func=cmd_ladder_series)

    v = sub.add_parser("verify", help="check the integral identities")
    vs = v.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    vs.required = True

    def summary(sp):
        sp.add_argument("--summary", help="JSON file with median and quartiles of |ratio - 1| "
                                          "per decade of t")

    v1 = vs.add_parser(
        "thm1", help="J1 ladder integral over a Gram interval",
        description="For each nu: int J1(phi_1(t)) |zeta(1/2+it)|^2 dt over "
                    "[phi_1^-1(t_nu), phi_1^-1(t_{nu+1})] against 2 sqrt(2pi)/sqrt(t_nu) "
                    "sin(t_nu - pi/4) (kind thm1); the same integral with weight phi_1' against "
                    "J0(t_nu) - J0(t_{nu+1}), exact (thm1_exact_midchain); and against "
                    "2 sqrt(2pi)/(sqrt(t) log t) sin(t - pi/4) (chain39).")
    v1.add_argument("--nu-from", type=int, required=True)
    v1.add_argument("--nu-to", type=int, required=True)
    v1.add_argument("--nu-step", type=int, default=1)
    v1.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    v1.add_argument("--mode", choices=["paper_literal", "sin_zeros"], default="paper_literal")
    v1.add_argument("--admissible-only", action="store_true",
                    help="skip intervals that fail admissibility (default: flag them)")
    v1.add_argument("--ladder", help="first-order ladder file whose image covers the range")
    v1.add_argument("--rel-tol", type=float, default=V.THM1_REL_TOL)
    out(v1)
    summary(v1)
    jobs(v1)
    v1.set_defaults(func=cmd_verify_thm1)

    v2 = vs.add_parser(
        "thm2", help="eighth-power ladder integral over [T, T+U]",
        description="int |zeta(1/2+i phi_2(t))|^4 |zeta(1/2+it)|^4 dt over "
                    "[phi_2^-1(T), phi_2^-1(T+U)] against U log^8 T/(4 pi^4) (kind thm2), and "
                    "int |zeta(phi_2)|^4 phi_2' dt against int_T^{T+U} |zeta|^4 (thm2_midchain, "
                    "exact).  U must not exceed T/log T.")
    v2.add_argument("--T", type=float, nargs="+", required=True)
    v2.add_argument("--U", type=float, required=True)
    v2.add_argument("--ladder", required=True, help="second-order ladder file")
    v2.add_argument("--phi1-limits", metavar="LADDER1",
                    help="take the limits from this first-order ladder's inverse instead")
    v2.add_argument("--rel-tol", type=float, default=V.THM2_REL_TOL)
    out(v2)
    summary(v2)
    jobs(v2)
    v2.set_defaults(func=cmd_verify_thm2)

    vc = vs.add_parser(
        "chain", help="asymptotic steps between the Bessel integral and the sine law",
        description="Per Gram interval: 1/sqrt(t_{nu+1}) vs 1/sqrt(t_nu) (chain36); "
                    "J0(t_nu) - J0(t_{nu+1}) vs sqrt(2/(pi t_nu)) [cos(t_nu - pi/4) - "
                    "cos(t_{nu+1} - pi/4)] (chain37); that cosine difference vs "
                    "(2pi/log t_nu) sin(t_nu - pi/4) (chain38).  scaled_residual multiplies "
                    "by t^1.5 log t, t^1.5 and log^2 t respectively.")
    vc.add_argument("--nu-from", type=int, required=True)
    vc.add_argument("--nu-to", type=int, required=True)
    vc.add_argument("--nu-step", type=int, default=1)
    out(vc)
    summary(vc)
    jobs(vc)
    vc.set_defaults(func=cmd_verify_chain)

    oc = sub.add_parser(
        "oracle-check", help="compare against the high-precision golden fixtures",
        description="Recompute theta, Z, zeta zeros, Gram points, J1 zeros, J0/J1 values and "
                    f"pi(t) and compare with the shipped fixtures (override the directory with "
                    f"--fixtures or ${ENV_VAR}).")
    oc.add_argument("--fixtures", help="fixture directory")
    out(oc)
    oc.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("jacobladder: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        rc = args.func(args)
    except UsageError as exc:
        print(f"jacobladder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JacobLadderError, OSError) as exc:
        print(f"jacobladder: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK if rc is None else int(rc)


if __name__ == "__main__":
    sys.exit(main())
