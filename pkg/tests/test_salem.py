import math

import numpy as np
import pytest

from salemscope.intpoly import IntPolynomial, cyclotomic, cyclotomic_free, cyclotomic_product, is_reciprocal
from salemscope.powerpoly import power_min_poly, power_poly_scan
from salemscope.rootcount import unimodular_root_count
from salemscope.salem import (
    BadL,
    Method,
    Verdict,
    certify_both,
    certify_direct,
    certify_power_criterion,
    detect_cyclotomic_by_periodicity,
    hits_in_range,
    satisfies_dominance,
    tau_estimate,
    theorem2_checks,
    vieira_condition,
)
from salemscope.intpoly import NonMonic
from salemscope.rootcount import NotReciprocal

P = IntPolynomial
ROW1 = P([1, -1, -1, -1, 1])
ROW2 = P.from_half([1, -1, 0, -1])
LEHMER = P.from_half([1, 1, 0, -1, -1, -1])


def test_vieira_examples():
    p2 = P([1, -3, 1, -3, 1])
    chk = vieira_condition(p2, 1)
    assert not chk.satisfied
    assert (chk.lhs, chk.lhs_scaled, chk.rhs_scaled) == (3, 12, 12)
    assert vieira_condition(power_min_poly(ROW1, 9).poly, 1).satisfied
    assert not vieira_condition(cyclotomic(5), 1).satisfied


def test_vieira_degree4_reduction():
    # for d = 4 the l=1 test reads |a_3| > 2 + |a_2|
    for r in power_poly_scan(ROW1, 1, 300):
        a = r.poly
        assert satisfies_dominance(a) == (abs(a[3]) > 2 + abs(a[2]))


def test_vieira_errors():
    with pytest.raises(NotReciprocal):
        vieira_condition(P([2, -3, 1]), 0)
    with pytest.raises(BadL):
        vieira_condition(ROW1, 2)


def test_vieira_l0_on_plain_circle_poly():
    # x^4 + 1 with l = 0: 2*4*1 > 4*0, so all four roots on the circle
    assert vieira_condition(P([1, 0, 0, 0, 1]), 0).satisfied


def test_power_criterion_row1():
    rep = certify_power_criterion(ROW1, 50)
    assert rep.verdict is Verdict.SALEM
    assert rep.witness_n == 9
    assert rep.method is Method.POWER
    assert [b.n for b in rep.bounds] == list(range(2, 10))


def test_power_criterion_lehmer():
    rep = certify_power_criterion(LEHMER, 700)
    assert rep.verdict is Verdict.SALEM
    assert rep.witness_n == 605
    assert rep.unimodular_count == 8


def test_power_criterion_inconclusive_when_budget_short():
    rep = certify_power_criterion(LEHMER, 100)
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.witness_n is None


def test_cyclotomic_product_rejected():
    p = cyclotomic_product(5, 12)
    for rep in (certify_power_criterion(p, 100), certify_direct(p)):
        assert rep.verdict is Verdict.NOT_SALEM
        assert "cyclotomic" in rep.failure_reason


def test_structural_rejections():
    assert certify_power_criterion(P([2, -3, 1, 1]), 10).failure_reason == "not reciprocal"
    assert certify_direct(P([1, 0, 0, 1])).failure_reason == "odd degree"
    assert certify_direct(P([1, -3, 1])).failure_reason == "degree below 4"
    assert certify_direct(ROW1 * ROW1).failure_reason == "not squarefree"
    with pytest.raises(NonMonic):
        certify_direct(ROW1 * 2)


def test_power_criterion_needs_root_above_one():
    # reflected polynomial x -> -x: its real roots are negative
    p = P([1, 1, -1, 1, 1])
    assert certify_direct(p).verdict is Verdict.NOT_SALEM
    rep = certify_power_criterion(p, 100)
    assert rep.verdict is Verdict.NOT_SALEM
    assert rep.failure_reason == "no real root greater than 1"


def test_direct_examples():
    assert certify_direct(ROW2).verdict is Verdict.SALEM
    rep = certify_direct(cyclotomic(5))
    assert rep.verdict is Verdict.NOT_SALEM and "cyclotomic" in rep.failure_reason


def test_direct_quartic_with_float_oracle():
    p = P([1, -2, 0, -2, 1])
    rep = certify_direct(p)
    roots = np.roots([1, -2, 0, -2, 1])
    on_circle = sum(abs(abs(r) - 1) < 1e-9 for r in roots)
    above = sum(abs(r.imag) < 1e-9 and r.real > 1 for r in roots)
    assert (on_circle, above) == (2, 1)
    assert rep.verdict is Verdict.SALEM
    assert rep.tau_estimate == pytest.approx(max(r.real for r in roots if abs(r.imag) < 1e-9), rel=1e-12)


def test_both_methods():
    rep = certify_both(ROW1, 50)
    assert rep.verdict is Verdict.SALEM and rep.witness_n == 9 and rep.method is Method.BOTH
    rep = certify_both(LEHMER, 50)
    assert rep.verdict is Verdict.SALEM
    assert "inconclusive" in rep.failure_reason


def test_tau_estimates_match_reference(rows, polys):
    for row, p in zip(rows, polys):
        assert tau_estimate(p) == pytest.approx(row["tau"], abs=1e-8)


def test_witness_is_least(polys):
    for p in polys[:6]:
        rep = certify_power_criterion(p, 700)
        assert rep.verdict is Verdict.SALEM
        assert hits_in_range(p, 2, rep.witness_n) == [rep.witness_n]


def test_dominance_implies_circle_roots(polys):
    for p in polys:
        d = p.degree
        for r in power_poly_scan(p, 1, 250):
            if satisfies_dominance(r.poly):
                assert unimodular_root_count(r.poly) == d - 2


def test_theorem2_example_row1_n2():
    chk = theorem2_checks(ROW1, 2, P([1, -3, 1, -3, 1]))
    assert chk.b_holds and chk.c_holds
    tau = tau_estimate(ROW1)
    assert tau**2 + tau**-2 == pytest.approx(3.3027, abs=1e-4)


def test_theorem2_bounds_hold_over_corpus(polys):
    for p in polys:
        tau = tau_estimate(p)
        prev = None
        for r in power_poly_scan(p, 1, 100):
            chk = theorem2_checks(p, r.n, r.poly, prev, tau)
            assert chk.ok(), (p, r.n)
            prev = r.poly


def test_theorem2_row6_n43():
    p = P.from_half([1, 0, -1, 0, 0, -1])
    chk = theorem2_checks(p, 43, power_min_poly(p, 43).poly)
    assert chk.c_holds and not chk.c_failed_k


def test_theorem2_bound_b_overflow_safe():
    # tau^n overflows a double near n = 1300 for row 1; the check works in logs
    chk = theorem2_checks(ROW1, 1500, power_min_poly(ROW1, 1500).poly)
    assert chk.b_holds


def test_theorem2_flags_violation():
    # |a_{d-1}| = 0 but a middle coefficient is huge
    bad = P([1, 0, 100, 0, 1])
    chk = theorem2_checks(ROW1, 1, bad, tau=1.5)
    assert not chk.c_holds and chk.c_failed_k == [1]


def test_graeffe_ratio_converges_for_large_tau():
    # error is about (d-2)(1+tau)/tau^n, tiny only when tau^n is large
    for p in (ROW1, ROW2):
        tau = tau_estimate(p)
        d = p.degree
        a50, a51 = (power_min_poly(p, n).poly[d - 1] for n in (50, 51))
        assert abs(a51 / a50 - tau) < 1e-6


def test_periodicity_examples(polys):
    assert detect_cyclotomic_by_periodicity(cyclotomic(5))
    assert not detect_cyclotomic_by_periodicity(ROW1)
    assert detect_cyclotomic_by_periodicity(P([-1, 0, 1]))


def test_periodicity_agrees_with_trial_division(polys):
    cases = list(polys)
    cases += [cyclotomic_product(*ks) for ks in [(5,), (3, 4), (5, 12), (7, 9), (1, 1, 2, 2, 3, 5)]]
    cases += [ROW1 * cyclotomic(3), LEHMER * cyclotomic(4)]
    for p in cases:
        assert is_reciprocal(p)
        periodic = detect_cyclotomic_by_periodicity(p)
        if periodic:
            assert not cyclotomic_free(p)
        only_cyclotomic = all(abs(abs(r) - 1) < 1e-6 for r in np.roots([float(a) for a in reversed(p.coeffs)]))
        assert periodic == only_cyclotomic


def test_report_json_shape():
    obj = certify_power_criterion(ROW1, 20).to_json()
    assert set(obj) == {
        "verdict", "method", "witness_n", "unimodular_count", "roots_above_one",
        "cyclotomic_free", "tau_estimate", "failure_reason", "bounds",
    }
    assert obj["verdict"] == "Salem" and obj["method"] == "PowerCriterion"
    assert obj["bounds"][0]["n"] == 2


def test_published_hit_list_typo():
    """Among n <= 300 for the quartic, n = 119 passes and n = 244 does not.

    Checked here against 80-digit root powering, independent of the matrix path.
    """
    import mpmath

    with mpmath.workdps(80):
        roots = mpmath.polyroots([1, -1, -1, -1, 1], maxsteps=300, extraprec=300)
        for n, expected in ((119, True), (244, False)):
            a3 = -sum(r**n for r in roots)
            a2 = sum(roots[i] ** n * roots[j] ** n for i in range(4) for j in range(i + 1, 4))
            assert (abs(a3.real) > 2 + abs(a2.real)) is expected
    hits = hits_in_range(ROW1, 1, 300)
    assert 119 in hits and 244 not in hits
