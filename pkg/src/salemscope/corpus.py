"""Golden reference data and the acceptance checks run against it."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional

import numpy as np

from .intpoly import IntPolynomial, cyclotomic_product, is_reciprocal, is_squarefree
from .powerpoly import power_min_poly, power_poly_scan
from .probability import prob_d4, prob_d6_integral, prob_grid
from .rootcount import count_roots_above_one, unimodular_root_count
from .salem import (
    Verdict,
    certify_direct,
    certify_power_criterion,
    detect_cyclotomic_by_periodicity,
    hits_in_range,
    tau_estimate,
    theorem2_checks,
)


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    with resources.files("salemscope.data").joinpath(name).open() as fh:
        return json.load(fh)


def salem_rows() -> list[dict]:
    return load("salem_rows.json")["rows"]


def salem_polys() -> list[IntPolynomial]:
    return [IntPolynomial.from_half(r["half"]) for r in salem_rows()]


# degree 4..12, all reciprocal; the next-to-last is not squarefree
CYCLOTOMIC_PRODUCTS = [
    (5,), (3, 4), (7,), (5, 6), (5, 12), (8, 12), (1, 1, 2, 2, 3, 5), (11,), (7, 9), (5, 6, 7),
]


def cyclotomic_corpus() -> list[IntPolynomial]:
    return [cyclotomic_product(*ks) for ks in CYCLOTOMIC_PRODUCTS]


def random_reciprocal(rng: random.Random, degree: int, lo: int, hi: int, monic: bool = True) -> IntPolynomial:
    half = [rng.randint(lo, hi) for _ in range(degree // 2 + 1)]
    if monic:
        half[0] = 1
    elif half[0] == 0:
        half[0] = rng.choice([-1, 1])
    return IntPolynomial.from_half(half)


def random_non_salem(count: int = 20, seed: int = 20240101) -> list[IntPolynomial]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = random_reciprocal(rng, rng.choice([4, 6, 8, 10, 12]), -3, 3)
        if certify_direct(p).verdict is Verdict.NOT_SALEM and p not in out:
            out.append(p)
    return out


# -- float oracle for root location ------------------------------------------

MARGIN = 1e-8
AMBIGUOUS = 1e-5


def float_root_classes(p: IntPolynomial) -> Optional[tuple[int, int]]:
    """(roots on the unit circle, real roots above 1) from numpy's roots,
    or None when a root lands in the ambiguous band ``[1e-8, 1e-5]``."""
    roots = np.roots([float(a) for a in reversed(p.coeffs)])
    on_circle = above = 0
    for z in roots:
        dm = abs(abs(z) - 1.0)
        if MARGIN <= dm <= AMBIGUOUS:
            return None
        if dm < MARGIN:
            on_circle += 1
            continue
        if MARGIN <= abs(z.imag) <= AMBIGUOUS:
            return None
        if abs(z.imag) < MARGIN and z.real > 1.0:
            above += 1
    return on_circle, above


# -- criteria ----------------------------------------------------------------

@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key:<4} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _timed(fn: Callable[[], tuple[bool, str]], key: str, title: str) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(key, title, passed, detail, time.perf_counter() - t0)


def check_power_coefficients() -> CriterionResult:
    def run():
        data = load("power_coefficients.json")
        p = IntPolynomial.from_half(data["half"])
        t0 = time.perf_counter()
        bad = []
        for n, col in data["columns"].items():
            got = power_min_poly(p, int(n)).poly.coeffs
            want = [int(v) for v in col]
            full = want + want[-2::-1]
            if list(got) != full:
                bad.append(n)
        elapsed = time.perf_counter() - t0
        ok = not bad and elapsed < 5.0
        return ok, f"mismatched n={bad or 'none'}, {elapsed:.3f}s (limit 5s)"

    return _timed(run, "1", "power polynomial coefficients exact")


def check_first_hits() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        bad = []
        for row in salem_rows():
            want = row["first_hits"]
            got = hits_in_range(IntPolynomial.from_half(row["half"]), 1, want[-1])
            if got != want:
                bad.append((row["row"], got))
        elapsed = time.perf_counter() - t0
        return not bad and elapsed < 120.0, f"mismatches={bad or 'none'}, {elapsed:.1f}s (limit 120s)"

    return _timed(run, "2", "first witness lists for 7 Salem rows")


def check_frequencies() -> CriterionResult:
    def run():
        parts = []
        ok = True
        for scan in load("frequencies.json")["scans"]:
            p = IntPolynomial.from_half(scan["half"])
            got = hits_in_range(p, scan["n_from"], scan["n_to"])
            same = got == scan["hits"]
            ok &= same
            freq = Fraction(len(got), scan["n_to"] - scan["n_from"] + 1)
            parts.append(f"[{scan['n_from']},{scan['n_to']}] {len(got)} hits ({freq}) {'ok' if same else 'MISMATCH'}")
        return ok, "; ".join(parts)

    return _timed(run, "3", "hit lists over fixed n ranges")


def check_p4() -> CriterionResult:
    def run():
        exact = prob_d4()
        grid = prob_grid(4, 10_000, 1e9, restrict_symmetry=False)
        ok = exact.exact == "1/3" and abs(grid.value - 1 / 3) < 1e-3
        return ok, f"exact={exact.exact}, grid(m=1e4)={grid.value:.6f} (tol 1e-3)"

    return _timed(run, "4", "p_4")


def check_p6() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        ref = load("probabilities.json")["p6"]
        integral = prob_d6_integral(1e-7)
        grid = prob_grid(6, 3142, 1e9)
        elapsed = time.perf_counter() - t0
        ok = (
            abs(integral.value - ref) < 1e-6
            and abs(grid.value - integral.value) < 5e-4
            and elapsed < 60.0
        )
        return ok, (
            f"integral={integral.value:.8f} (ref {ref}, tol 1e-6), "
            f"grid(m=3142)={grid.value:.6f} (tol 5e-4), {elapsed:.1f}s (limit 60s)"
        )

    return _timed(run, "5", "p_6 integral and grid")


def check_p8_p10(m: int = 1571, workers: int = 1) -> CriterionResult:
    def run():
        ref = load("probabilities.json")
        tol = 5e-4 if m >= 1571 else 1e-3
        p8 = prob_grid(8, m, 1e9, restrict_symmetry=True, workers=workers)
        p10 = prob_grid(10, m, 1e9, restrict_symmetry=True, workers=workers)
        ok = abs(p8.value - ref["p8"]) < tol and abs(p10.value - ref["p10"]) < tol
        return ok, (
            f"m={m}: p8={p8.value:.6f} (ref {ref['p8']}), p10={p10.value:.6f} "
            f"(ref {ref['p10']}), tol {tol:g}, shell hits {p8.shell_hits}/{p10.shell_hits}"
        )

    return _timed(run, "6", "p_8 and p_10 grid with H! symmetry")


def certifier_corpus() -> list[tuple[str, IntPolynomial, int]]:
    rows = salem_rows()
    default_max = max(r["first_hits"][0] for r in rows) + 100
    out = [(f"salem row {r['row']}", IntPolynomial.from_half(r["half"]), r["first_hits"][0] + 100) for r in rows]
    out += [(f"cyclotomic {ks}", p, default_max) for ks, p in zip(CYCLOTOMIC_PRODUCTS, cyclotomic_corpus())]
    out += [(f"random {p.to_text()}", p, default_max) for p in random_non_salem()]
    return out


def check_certifier_agreement() -> CriterionResult:
    def run():
        bad = []
        counts = {v: 0 for v in Verdict}
        for name, p, max_n in certifier_corpus():
            direct = certify_direct(p)
            power = certify_power_criterion(p, max_n)
            counts[power.verdict] += 1
            if power.verdict is not Verdict.INCONCLUSIVE and power.verdict is not direct.verdict:
                bad.append(name)
        summary = ", ".join(f"{v.value}={c}" for v, c in counts.items())
        return not bad, f"power verdicts {summary}; disagreements={bad or 'none'}"

    return _timed(run, "7", "power criterion vs direct certifier")


def theorem2_table(p: IntPolynomial, n_max: int = 101):
    return {r.n: r.poly for r in power_poly_scan(p, 1, n_max)}


def check_growth_bounds() -> CriterionResult:
    def run():
        viol = []
        for row, p in zip(salem_rows(), salem_polys()):
            tau = tau_estimate(p)
            table = theorem2_table(p, 100)
            for n in range(1, 101):
                chk = theorem2_checks(p, n, table[n], table.get(n - 1), tau)
                if not chk.ok():
                    viol.append((row["row"], n))
        return not viol, f"violations={viol or 'none'} over n<=100"

    return _timed(run, "8bc", "growth bounds (b) and (c)")


def check_ratio_limit() -> CriterionResult:
    def run():
        parts, ok = [], True
        for row, p in zip(salem_rows(), salem_polys()):
            tau = tau_estimate(p)
            d = p.degree
            table = theorem2_table(p, 51)
            err = abs(table[51][d - 1] / table[50][d - 1] - tau)
            ok &= err < 1e-6
            parts.append(f"row{row['row']}={err:.1e}")
        return ok, "ratio |a(51)/a(50) - tau| (tol 1e-6): " + ", ".join(parts)

    return _timed(run, "8a1", "successive-coefficient ratio at n=50")


def check_root_limit() -> CriterionResult:
    def run():
        parts, ok = [], True
        for row, p in zip(salem_rows(), salem_polys()):
            tau = tau_estimate(p)
            d = p.degree
            table = theorem2_table(p, 100)
            errs = [abs(math.exp(math.log(abs(table[n][d - 1])) / n) - tau) for n in range(10, 101)]
            early, late = max(errs[:46]), max(errs[46:])
            good = errs[-1] < 1e-3 and late <= early
            ok &= good
            parts.append(f"row{row['row']}={errs[-1]:.1e}")
        return ok, "n-th root error at n=100 (tol 1e-3, shrinking over [10,100]): " + ", ".join(parts)

    return _timed(run, "8a2", "n-th root of the top coefficient")


def random_rootcount_corpus(count: int = 500, seed: int = 7):
    """Squarefree reciprocal polynomials of even degree 2..12 with coefficients
    in [-5, 5] and an unambiguous float classification."""
    rng = random.Random(seed)
    out, resampled = [], 0
    while len(out) < count:
        p = random_reciprocal(rng, rng.choice([2, 4, 6, 8, 10, 12]), -5, 5, monic=False)
        if p.degree < 2 or not is_squarefree(p):
            continue
        cls = float_root_classes(p)
        if cls is None:
            resampled += 1
            continue
        out.append((p, cls))
    return out, resampled


def check_rootcount_oracle() -> CriterionResult:
    def run():
        corpus, resampled = random_rootcount_corpus()
        bad = []
        for p, (on_circle, above) in corpus:
            if unimodular_root_count(p) != on_circle or count_roots_above_one(p) != above:
                bad.append(p.to_text())
        return not bad, f"{len(corpus)} polynomials, {resampled} resampled, mismatches={bad[:3] or 'none'}"

    return _timed(run, "9", "exact root counts vs float roots")


def check_periodicity() -> CriterionResult:
    def run():
        cyc = [detect_cyclotomic_by_periodicity(p) for p in cyclotomic_corpus()]
        sal = [detect_cyclotomic_by_periodicity(p) for p in salem_polys()]
        ok = all(cyc) and not any(sal)
        return ok, f"cyclotomic products periodic {sum(cyc)}/10, Salem rows periodic {sum(sal)}/7"

    return _timed(run, "10", "periodicity detects cyclotomic products")


def all_checks(full: bool = True, workers: int = 1, coarse_m: int = 400) -> list[Callable[[], CriterionResult]]:
    """Every acceptance check, in order.  ``full=False`` runs the d=8/10 grid at
    ``coarse_m`` with the widened 1e-3 tolerance."""
    m = 1571 if full else coarse_m

    def check_grid_probabilities():
        return check_p8_p10(m, workers)

    return [
        check_power_coefficients,
        check_first_hits,
        check_frequencies,
        check_p4,
        check_p6,
        check_grid_probabilities,
        check_certifier_agreement,
        check_growth_bounds,
        check_ratio_limit,
        check_root_limit,
        check_rootcount_oracle,
        check_periodicity,
    ]
