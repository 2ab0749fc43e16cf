import math

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from salemscope.intpoly import IntPolynomial, NonMonic, is_reciprocal, is_squarefree
from salemscope.powerpoly import (
    BigIntMatrix,
    DegreeTooSmall,
    char_poly,
    companion,
    mat_pow,
    newton_charpoly,
    power_min_poly,
    power_poly_scan,
    power_sums,
)

P = IntPolynomial
ROW1 = P([1, -1, -1, -1, 1])
M2 = BigIntMatrix.from_rows([[0, 1], [-1, 3]])


def root_power_oracle(p: IntPolynomial, n: int) -> IntPolynomial:
    """Expand prod (x - r^n) over 60-digit roots of p and round."""
    with mpmath.workdps(60 + n):
        roots = mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=500, extraprec=60 + 2 * n)
        c = [mpmath.mpc(1)]
        for r in roots:
            rn = r**n
            c = [(c[i] if i < len(c) else 0) - rn * (c[i - 1] if i else 0) for i in range(len(c) + 1)]
        return P(int(mpmath.nint(mpmath.re(a))) for a in reversed(c))


def test_companion_layout():
    assert companion(P([1, -3, 1])).tolist() == [[0, 1], [-1, 3]]
    c = companion(ROW1)
    assert c.dim == 4
    assert c.rows[-1] == (-1, 1, 1, 1)
    assert c.rows[0] == (0, 1, 0, 0)


def test_companion_rejects_bad_input():
    with pytest.raises(NonMonic):
        companion(P([1, 2]) * 2)
    with pytest.raises(DegreeTooSmall):
        companion(P([1, 1]))


def test_mat_pow_examples():
    assert mat_pow(M2, 1) == M2
    assert mat_pow(M2, 2).tolist() == [[-1, 3], [-3, 8]]
    assert mat_pow(companion(P([-1, 0, 1])), 2) == BigIntMatrix.identity(2)


def test_mat_pow_matches_repeated_product():
    c = companion(ROW1)
    acc = c
    for n in range(2, 40):
        acc = acc @ c
        assert mat_pow(c, n) == acc


def test_char_poly_examples():
    assert char_poly(companion(ROW1)) == ROW1
    assert char_poly(BigIntMatrix.identity(2)) == P([1, -2, 1])
    assert char_poly(mat_pow(companion(ROW1), 2)) == P([1, -3, 1, -3, 1])


def test_power_sums_of_row1_square():
    # P_2 has power sums p_k = s_{2k}(P)
    s = power_sums(ROW1, 8)
    assert [s[2], s[4], s[6], s[8]] == [3, 7, 27, 79]
    assert newton_charpoly([3, 7, 27, 79]) == P([1, -3, 1, -3, 1])
    assert root_power_oracle(ROW1, 2) == P([1, -3, 1, -3, 1])


matrices = st.integers(2, 5).flatmap(
    lambda d: st.lists(st.lists(st.integers(-6, 6), min_size=d, max_size=d), min_size=d, max_size=d)
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_char_poly_matches_sympy(rows):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()
    assert char_poly(BigIntMatrix.from_rows(rows)) == P(reversed([int(a) for a in expected]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=8))
def test_power_sums_are_companion_traces(low):
    p = P(low + [1])
    c = companion(p)
    s = power_sums(p, 3 * p.degree)
    acc = c
    for j in range(1, 3 * p.degree + 1):
        if j > 1:
            acc = acc @ c
        assert acc.trace() == s[j]


def test_power_min_poly_identity_at_n1(polys):
    for p in polys + [P([5, -2, 7, 1])]:
        assert power_min_poly(p, 1).poly == p


def test_power_min_poly_table_values():
    p = P.from_half([1, 0, -1, 0, 0, -1])
    assert power_min_poly(p, 43).poly.coeffs[:6] == (1, -21586, 3611, 688, 5418, -6193)
    assert power_min_poly(p, 200).poly[1] == -144186527874521531930


def test_scan_agrees_with_direct_powering(polys):
    for p in polys:
        scanned = {r.n: r for r in power_poly_scan(p, 1, 60)}
        for n in (1, 2, 7, 33, 60):
            direct = power_min_poly(p, n)
            assert scanned[n].poly == direct.poly
            assert scanned[n].trace_sums == direct.trace_sums


def test_reciprocal_and_unit_constant_over_corpus(polys):
    for p in polys:
        for r in power_poly_scan(p, 1, 300):
            assert r.poly.is_monic() and r.poly.degree == p.degree
            assert is_reciprocal(r.poly)
            assert r.poly[0] == 1


def test_multiplicativity_row1():
    for n in range(1, 21):
        pn = power_min_poly(ROW1, n).poly
        if is_squarefree(pn):
            assert power_min_poly(ROW1, 2 * n).poly == power_min_poly(pn, 2).poly


def test_float_cross_check(polys):
    for p in polys:
        roots = np.roots([float(a) for a in reversed(p.coeffs)])
        for n in (1, 2, 5, 11, 17, 30):
            pn = power_min_poly(p, n).poly
            got = np.roots([float(a) for a in reversed(pn.coeffs)])
            want = roots**n
            for w in want:
                rel = np.min(np.abs(got - w)) / max(1.0, abs(w))
                assert rel < 1e-6


def test_matches_root_power_oracle(polys):
    for p in polys[:3]:
        for n in (3, 9, 25):
            assert power_min_poly(p, n).poly == root_power_oracle(p, n)


def test_top_coefficient_growth_bound(polys):
    for p in polys:
        tau = max(r.real for r in np.roots([float(a) for a in reversed(p.coeffs)]) if abs(r.imag) < 1e-9)
        d = p.degree
        for r in power_poly_scan(p, 1, 200):
            bound = math.exp(r.n * math.log(tau)) + tau ** (-r.n) + d - 2
            assert abs(r.poly[d - 1]) <= bound * (1 + 1e-9)
