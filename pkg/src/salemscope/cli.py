"""Command-line front end.

JSON is the stable output format; big integers are written as decimal
strings.  ``text`` output is for people and may change.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional, Sequence

from .intpoly import IntPolynomial, PolynomialError, is_reciprocal
from .powerpoly import power_min_poly, power_poly_scan
from .probability import (
    ProbabilityError,
    empirical_frequency,
    grid_hit_tuples,
    prob_d4,
    prob_d6_integral,
    prob_grid,
)
from .salem import (
    DEFAULT_MAX_N,
    certify_both,
    certify_direct,
    certify_power_criterion,
    detect_cyclotomic_by_periodicity,
    satisfies_dominance,
    tau_estimate,
    theorem2_checks,
)

EPILOG = """\
polynomial text: whitespace-separated integers in ascending powers,
  "1 -1 -1 -1 1" is x^4 - x^3 - x^2 - x + 1.  With --half only a_0..a_{d/2}
  are given and the rest mirrored ("1 -1 -1" gives the same polynomial).

CSV columns:
  pown     k,coefficient              (coefficient of x^k in P_n)
  scan     n,passes                   (one row per n in the range)
  analyze  n,a_top,b_holds,c_holds,ratio_estimate,root_estimate
  prob     t_1,...,t_H                (angles of passing grid nodes)

exit status: 0 success, 1 a check failed (corpus) or verdict not Salem
(certify --expect-salem), 2 usage error.
"""


class UsageError(Exception):
    pass


def _workers_default() -> int:
    try:
        return max(1, int(os.environ.get("SALEMSCOPE_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="salemscope",
        description="Salem number certification via power polynomials.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def poly_args(p):
        p.add_argument("--poly", required=True, help="coefficients, ascending powers")
        p.add_argument("--half", action="store_true", help="--poly lists a_0..a_{d/2} only")

    def out_args(p, csv_ok=True):
        choices = ["json", "text"] + (["csv"] if csv_ok else [])
        p.add_argument("--output", choices=choices, default="json")

    p = sub.add_parser("pown", help="print the coefficients of P_n")
    poly_args(p)
    p.add_argument("--n", type=int, required=True)
    out_args(p)

    p = sub.add_parser("certify", help="decide whether the polynomial is a Salem polynomial")
    poly_args(p)
    p.add_argument("--method", choices=["power", "direct", "both"], default="both")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--expect-salem", action="store_true", help="exit 1 unless the verdict is Salem")
    p.add_argument("--no-bounds", action="store_true", help="omit the per-n bound records")
    out_args(p, csv_ok=False)

    p = sub.add_parser("scan", help="list n in a range whose P_n passes the l=1 test")
    poly_args(p)
    p.add_argument("--n-from", type=int, default=1)
    p.add_argument("--n-to", type=int, required=True)
    out_args(p)

    p = sub.add_parser("prob", help="probability that a random power passes the l=1 test")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--method", choices=["exact", "integral", "grid"], default=None)
    p.add_argument("--m", type=int, default=1571, help="grid intervals per axis (h = pi/m)")
    p.add_argument("--D", type=float, default=1e9, help="value standing in for tau^n + tau^-n")
    p.add_argument("--abs-tol", type=float, default=1e-9)
    p.add_argument("--full-grid", action="store_true", help="scan the whole grid, no H! symmetry")
    p.add_argument("--workers", type=int, default=_workers_default())
    out_args(p)

    p = sub.add_parser("analyze", help="per-n growth bounds, tau estimates, periodicity")
    poly_args(p)
    p.add_argument("--n-from", type=int, default=1)
    p.add_argument("--n-to", type=int, default=100)
    out_args(p)

    p = sub.add_parser("corpus", help="run the acceptance checks against the embedded reference data")
    p.add_argument("--quick", action="store_true", help="d=8/10 grid at coarse m with tolerance 1e-3")
    p.add_argument("--workers", type=int, default=_workers_default())
    return ap


def _parse_poly(args) -> IntPolynomial:
    try:
        p = IntPolynomial.from_text(args.poly, half=args.half)
    except PolynomialError as exc:
        raise UsageError(str(exc)) from None
    if not p.is_monic():
        raise UsageError(f"polynomial {p} is not monic")
    if p.degree < 2:
        raise UsageError(f"polynomial {p} has degree below 2")
    return p


def _emit(obj, output: str, out) -> None:
    if output == "json":
        json.dump(obj, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        for k, v in obj.items():
            out.write(f"{k}: {v}\n")


def cmd_pown(args, out) -> int:
    p = _parse_poly(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    res = power_min_poly(p, args.n)
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "coefficient"])
        for k, a in enumerate(res.poly.coeffs):
            w.writerow([k, a])
        return 0
    obj = {
        "n": res.n,
        "degree": res.poly.degree,
        "coefficients": [str(a) for a in res.poly.coeffs],
        "trace_sums": [str(t) for t in res.trace_sums],
        "reciprocal": is_reciprocal(res.poly),
        "passes_l1": is_reciprocal(res.poly) and res.poly.degree >= 3 and satisfies_dominance(res.poly),
    }
    if args.output == "text":
        out.write(f"P_{res.n}(x) = {res.poly}\n")
        out.write(f"coefficients: {res.poly.to_text()}\n")
        return 0
    _emit(obj, "json", out)
    return 0


def _report_json(rep, with_bounds: bool) -> dict:
    obj = rep.to_json()
    if not with_bounds:
        obj["bounds"] = []
    return obj


def cmd_certify(args, out) -> int:
    p = _parse_poly(args)
    if args.max_n < 2:
        raise UsageError("--max-n must be >= 2")
    if args.method == "power":
        rep = certify_power_criterion(p, args.max_n)
    elif args.method == "direct":
        rep = certify_direct(p)
    else:
        rep = certify_both(p, args.max_n)
    obj = _report_json(rep, not args.no_bounds)
    if args.output == "text":
        out.write(f"{p}: {rep.verdict.value} ({rep.method.value})\n")
        if rep.witness_n:
            out.write(f"  witness n = {rep.witness_n}\n")
        if rep.failure_reason:
            out.write(f"  reason: {rep.failure_reason}\n")
    else:
        _emit(obj, "json", out)
    if args.expect_salem and rep.verdict.value != "Salem":
        return 1
    return 0


def cmd_scan(args, out) -> int:
    p = _parse_poly(args)
    if args.n_from < 1 or args.n_to < args.n_from:
        raise UsageError("need 1 <= --n-from <= --n-to")
    if not is_reciprocal(p):
        raise UsageError("scan needs a reciprocal polynomial")
    if p.degree < 4:
        raise UsageError("scan needs degree at least 4")
    freq = empirical_frequency(p, args.n_from, args.n_to)
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "passes"])
        hits = set(freq.hits)
        for n in range(args.n_from, args.n_to + 1):
            w.writerow([n, int(n in hits)])
        return 0
    if args.output == "text":
        out.write(f"{len(freq.hits)} of {args.n_to - args.n_from + 1}: {' '.join(map(str, freq.hits))}\n")
        return 0
    _emit(freq.to_json(), "json", out)
    return 0


def cmd_prob(args, out) -> int:
    d = args.degree
    method = args.method or {4: "exact", 6: "integral"}.get(d, "grid")
    try:
        if method == "exact":
            if d != 4:
                raise UsageError("--method exact is only available for --degree 4")
            est = prob_d4()
        elif method == "integral":
            if d != 6:
                raise UsageError("--method integral is only available for --degree 6")
            est = prob_d6_integral(args.abs_tol)
        else:
            if args.output == "csv":
                w = csv.writer(out, lineterminator="\n")
                H = (d - 2) // 2
                w.writerow([f"t_{i + 1}" for i in range(H)])
                for row in grid_hit_tuples(d, args.m, args.D, not args.full_grid):
                    w.writerow([f"{t:.12g}" for t in row])
                return 0
            est = prob_grid(d, args.m, args.D, not args.full_grid, workers=args.workers)
    except ProbabilityError as exc:
        raise UsageError(str(exc)) from None
    if args.output == "csv":
        raise UsageError("csv output is only available for --method grid")
    _emit(est.to_json(), args.output, out)
    return 0


def cmd_analyze(args, out) -> int:
    p = _parse_poly(args)
    if args.n_from < 1 or args.n_to < args.n_from:
        raise UsageError("need 1 <= --n-from <= --n-to")
    tau = tau_estimate(p)
    d = p.degree
    rows = []
    prev = None
    for res in power_poly_scan(p, max(1, args.n_from - 1), args.n_to):
        if res.n >= args.n_from:
            chk = theorem2_checks(p, res.n, res.poly, prev, tau) if tau else None
            rows.append((res, chk))
        prev = res.poly
    periodic = is_reciprocal(p) and detect_cyclotomic_by_periodicity(p)
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "a_top", "b_holds", "c_holds", "ratio_estimate", "root_estimate"])
        for res, chk in rows:
            w.writerow([
                res.n, res.poly[d - 1],
                "" if chk is None else int(chk.b_holds),
                "" if chk is None else int(chk.c_holds),
                "" if chk is None or chk.ratio_estimate is None else repr(chk.ratio_estimate),
                "" if chk is None or chk.root_estimate is None else repr(chk.root_estimate),
            ])
        return 0
    obj = {
        "tau_estimate": tau,
        "periodic": periodic,
        "records": [
            {
                "n": res.n,
                "a_top": str(res.poly[d - 1]),
                "b_holds": None if chk is None else chk.b_holds,
                "c_holds": None if chk is None else chk.c_holds,
                "c_failed_k": [] if chk is None else chk.c_failed_k,
                "ratio_estimate": None if chk is None else chk.ratio_estimate,
                "root_estimate": None if chk is None else chk.root_estimate,
            }
            for res, chk in rows
        ],
    }
    if args.output == "text":
        out.write(f"tau ~ {tau}, periodic: {periodic}\n")
        for r in obj["records"]:
            out.write(f"n={r['n']:>5} b={r['b_holds']} c={r['c_holds']} ratio={r['ratio_estimate']}\n")
        return 0
    _emit(obj, "json", out)
    return 0


def cmd_corpus(args, out) -> int:
    from .corpus import all_checks

    failed = 0
    for check in all_checks(full=not args.quick, workers=args.workers):
        res = check()
        failed += not res.passed
        out.write(res.line() + "\n")
        out.flush()
    out.write(f"{failed} criterion line(s) failed\n")
    return 1 if failed else 0


COMMANDS = {
    "pown": cmd_pown,
    "certify": cmd_certify,
    "scan": cmd_scan,
    "prob": cmd_prob,
    "analyze": cmd_analyze,
    "corpus": cmd_corpus,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("salemscope: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"salemscope {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
