"""Salem certification.

Two independent certifiers are provided:

* :func:`certify_power_criterion` scans ``n = 2, 3, ...`` for a power
  polynomial ``P_n`` that is reciprocal, squarefree, free of cyclotomic
  factors and satisfies the ``l = 1`` coefficient-dominance inequality.
* :func:`certify_direct` counts roots exactly (Sturm) and checks the
  classical definition.

They are meant to be run against each other.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from math import comb
from typing import Optional

import numpy as np

from .intpoly import (
    IntPolynomial,
    NonMonic,
    PolynomialError,
    cyclotomic_factors,
    cyclotomic_free,
    is_reciprocal,
    is_squarefree,
)
from .powerpoly import power_poly_scan
from .rootcount import NotReciprocal, count_roots_above_one, unimodular_root_count

DEFAULT_MAX_N = 1000
B_SLACK = 1e-6


class BadL(PolynomialError):
    pass


class Verdict(str, Enum):
    SALEM = "Salem"
    NOT_SALEM = "NotSalem"
    INCONCLUSIVE = "Inconclusive"


class Method(str, Enum):
    POWER = "PowerCriterion"
    DIRECT = "Direct"
    BOTH = "Both"


@dataclass(frozen=True)
class VieiraCheck:
    """Integer form of the dominance inequality:
    ``2 (d - 2l) |a_{d-l}| > d * sum_{k != l, d-l} |a_k|``."""

    l: int
    lhs: int
    lhs_scaled: int
    rhs_scaled: int
    satisfied: bool


def vieira_condition(p: IntPolynomial, l: int = 1) -> VieiraCheck:
    if not is_reciprocal(p):
        raise NotReciprocal(f"{p} is not self-reciprocal")
    d = p.degree
    if l < 0 or 2 * l >= d:
        raise BadL(f"need 0 <= l < d/2, got l={l}, d={d}")
    a = p.coeffs
    lhs = abs(a[d - l])
    rest = sum(abs(a[k]) for k in range(d + 1) if k != l and k != d - l)
    lhs_scaled = 2 * (d - 2 * l) * lhs
    rhs_scaled = d * rest
    return VieiraCheck(l, lhs, lhs_scaled, rhs_scaled, lhs_scaled > rhs_scaled)


def satisfies_dominance(p: IntPolynomial) -> bool:
    """Shortcut for the ``l = 1`` case on a reciprocal polynomial."""
    return vieira_condition(p, 1).satisfied


def tau_estimate(p: IntPolynomial) -> Optional[float]:
    """Largest real root of ``p`` above 1, as a float, or None.

    Newton from the right, seeded at ``1 + max|a_k|`` (a Cauchy bound for
    monic p).  Falls back to numpy's eigenvalue solver if Newton leaves
    ``(1, inf)`` or stalls.
    """
    c = [float(a) for a in p.coeffs]
    dc = [k * a for k, a in enumerate(c)][1:]

    def ev(cs, x):
        acc = 0.0
        for a in reversed(cs):
            acc = acc * x + a
        return acc

    x = 1.0 + max(abs(a) for a in c[:-1])
    for _ in range(500):
        fx, dfx = ev(c, x), ev(dc, x)
        if dfx == 0:
            break
        step = fx / dfx
        x_new = x - step
        if x_new <= 1.0:
            break
        if abs(step) <= 1e-15 * x_new:
            x = x_new
            if abs(ev(c, x)) <= 1e-9 * max(1.0, abs(ev(dc, x))):
                return x
            break
        x = x_new
    roots = np.roots(c[::-1])
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 1.0]
    return max(real) if real else None


@dataclass
class BoundCheck:
    n: int
    b_holds: bool
    c_holds: bool
    c_failed_k: list[int] = field(default_factory=list)
    ratio_estimate: Optional[float] = None
    root_estimate: Optional[float] = None

    def ok(self) -> bool:
        return self.b_holds and self.c_holds


def _bound_b(tau: float, n: int, top: int, d: int) -> bool:
    # tau^n + tau^-n <= |a_{d-1,n}| + d - 2 with slack 1e-6 * tau^n, done in logs
    rhs = abs(top) + d - 2
    lt = n * math.log(tau)
    lhs_log = lt + math.log(1.0 - B_SLACK + math.exp(-2.0 * lt))
    return lhs_log <= math.log(rhs)


def _bound_c(pn: IntPolynomial) -> list[int]:
    d = pn.degree
    base = abs(pn[d - 1]) + d - 2
    failed = []
    for k in range(1, d - 2):
        bound = comb(d - 2, k) * base + comb(d - 2, k - 1) + comb(d - 2, k + 1)
        if abs(pn[d - k - 1]) > bound:
            failed.append(k)
    return failed


def theorem2_checks(
    p: IntPolynomial,
    n: int,
    p_n: IntPolynomial,
    p_prev: Optional[IntPolynomial] = None,
    tau: Optional[float] = None,
) -> BoundCheck:
    """Coefficient-growth bounds on ``P_n`` plus root-squaring estimates of tau.

    ``p_prev`` is ``P_{n-1}``; when given, the ratio
    ``a_{d-1,n} / a_{d-1,n-1}`` is reported as an estimate of tau.
    """
    d = p_n.degree
    if tau is None:
        tau = tau_estimate(p)
    top = p_n[d - 1]
    b_ok = True if tau is None else _bound_b(tau, n, top, d)
    failed = _bound_c(p_n)
    ratio = None
    if p_prev is not None and p_prev[d - 1] != 0:
        ratio = top / p_prev[d - 1]
    root = math.exp(math.log(abs(top)) / n) if top else None
    return BoundCheck(n, b_ok, not failed, failed, ratio, root)


@dataclass
class CertificateReport:
    verdict: Verdict
    method: Method
    witness_n: Optional[int] = None
    unimodular_count: Optional[int] = None
    roots_above_one: Optional[int] = None
    cyclotomic_free: Optional[bool] = None
    tau_estimate: Optional[float] = None
    failure_reason: Optional[str] = None
    bounds: list[BoundCheck] = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        out["method"] = self.method.value
        return out


def _structural_failure(p: IntPolynomial) -> Optional[str]:
    if not is_reciprocal(p):
        return "not reciprocal"
    if p.degree % 2:
        return "odd degree"
    if p.degree < 4:
        return "degree below 4"
    return None


def certify_power_criterion(p: IntPolynomial, max_n: int = DEFAULT_MAX_N) -> CertificateReport:
    """Scan ``n = 2..max_n`` for the least power polynomial passing the criterion.

    Exhausting ``max_n`` without a witness or a bound violation yields
    ``Inconclusive``: no effective bound on the least witness is known.
    """
    if not p.is_monic():
        raise NonMonic(f"{p} is not monic")
    rep = CertificateReport(Verdict.NOT_SALEM, Method.POWER)
    reason = _structural_failure(p)
    if reason:
        rep.failure_reason = reason
        return rep
    if not is_squarefree(p):
        rep.failure_reason = "not squarefree"
        return rep
    cyc = cyclotomic_factors(p)
    rep.cyclotomic_free = not cyc
    if cyc:
        rep.failure_reason = f"cyclotomic factor Phi_{cyc[0]}"
        return rep
    tau = tau_estimate(p)
    rep.tau_estimate = tau
    if tau is None:
        rep.failure_reason = "no real root greater than 1"
        return rep

    d = p.degree
    prev = p
    for res in power_poly_scan(p, 2, max(2, max_n)):
        n, pn = res.n, res.poly
        chk = theorem2_checks(p, n, pn, prev, tau)
        rep.bounds.append(chk)
        prev = pn
        if not chk.ok():
            which = [] if chk.b_holds else ["(b)"]
            which += [f"(c) k={k}" for k in chk.c_failed_k]
            rep.failure_reason = f"growth bound violated at n={n}: {', '.join(which)}"
            return rep
        if pn.degree != d or not is_reciprocal(pn):
            continue
        if not satisfies_dominance(pn):
            continue
        if not is_squarefree(pn) or not cyclotomic_free(pn):
            continue
        rep.verdict = Verdict.SALEM
        rep.witness_n = n
        rep.unimodular_count = unimodular_root_count(pn)
        rep.roots_above_one = count_roots_above_one(pn)
        return rep
    rep.verdict = Verdict.INCONCLUSIVE
    rep.failure_reason = f"no witness n in [2, {max_n}]"
    return rep


def certify_direct(p: IntPolynomial) -> CertificateReport:
    """Classical check: exact root counts on the unit circle and above 1.

    Reciprocal, squarefree, cyclotomic-free, one root above 1 and d-2 roots on
    the circle together force irreducibility (any other factor would have all
    roots on the circle and hence be cyclotomic).
    """
    if not p.is_monic():
        raise NonMonic(f"{p} is not monic")
    rep = CertificateReport(Verdict.NOT_SALEM, Method.DIRECT)
    reason = _structural_failure(p)
    if reason:
        rep.failure_reason = reason
        return rep
    if not is_squarefree(p):
        rep.failure_reason = "not squarefree"
        return rep
    cyc = cyclotomic_factors(p)
    rep.cyclotomic_free = not cyc
    rep.unimodular_count = unimodular_root_count(p)
    rep.roots_above_one = count_roots_above_one(p)
    if rep.roots_above_one:
        rep.tau_estimate = tau_estimate(p)
    d = p.degree
    if cyc:
        rep.failure_reason = f"cyclotomic factor Phi_{cyc[0]}"
    elif rep.roots_above_one != 1:
        rep.failure_reason = f"{rep.roots_above_one} real roots above 1 (need 1)"
    elif rep.unimodular_count != d - 2:
        rep.failure_reason = f"{rep.unimodular_count} roots on the unit circle (need {d - 2})"
    else:
        rep.verdict = Verdict.SALEM
    return rep


def certify_both(p: IntPolynomial, max_n: int = DEFAULT_MAX_N) -> CertificateReport:
    direct = certify_direct(p)
    power = certify_power_criterion(p, max_n)
    rep = CertificateReport(
        direct.verdict,
        Method.BOTH,
        witness_n=power.witness_n,
        unimodular_count=direct.unimodular_count,
        roots_above_one=direct.roots_above_one,
        cyclotomic_free=direct.cyclotomic_free,
        tau_estimate=direct.tau_estimate,
        failure_reason=direct.failure_reason,
        bounds=power.bounds,
    )
    if power.verdict is Verdict.INCONCLUSIVE:
        if direct.verdict is Verdict.SALEM:
            rep.failure_reason = f"power criterion inconclusive: {power.failure_reason}"
    elif power.verdict is not direct.verdict:
        rep.verdict = Verdict.INCONCLUSIVE
        rep.failure_reason = (
            f"certifiers disagree: direct={direct.verdict.value} "
            f"({direct.failure_reason}), power={power.verdict.value} ({power.failure_reason})"
        )
    return rep


def period_bound(d: int) -> int:
    return 2 * d * d + 4


def detect_cyclotomic_by_periodicity(p: IntPolynomial, bound: Optional[int] = None) -> bool:
    """True iff two of ``P_1 .. P_bound`` coincide.

    A coefficient exceeding ``C(d, k)`` in modulus proves a root off the unit
    circle, after which the sequence can never repeat; the scan stops there.
    """
    d = p.degree
    if bound is None:
        bound = period_bound(d)
    caps = [comb(d, k) for k in range(d + 1)]
    seen = set()
    for res in power_poly_scan(p, 1, bound):
        c = res.poly.coeffs
        if any(abs(a) > cap for a, cap in zip(c, caps)):
            return False
        if c in seen:
            return True
        seen.add(c)
    return False


def hits_in_range(p: IntPolynomial, n_from: int, n_to: int) -> list[int]:
    """All n in ``[n_from, n_to]`` whose power polynomial satisfies the l=1 inequality."""
    return [
        r.n
        for r in power_poly_scan(p, n_from, n_to)
        if is_reciprocal(r.poly) and satisfies_dominance(r.poly)
    ]
