import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from salemscope.intpoly import IntPolynomial, cyclotomic, is_squarefree
from salemscope.rootcount import (
    NotReciprocal,
    NotSquarefree,
    OddDegree,
    RationalPolynomial,
    SturmChain,
    count_real_roots,
    count_roots_above_one,
    trace_transform,
    unimodular_root_count,
)

P = IntPolynomial
ROW1 = P([1, -1, -1, -1, 1])
LEHMER = P([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def test_trace_transform_examples():
    assert trace_transform(P([1, 0, 1])) == P([0, 1])
    assert trace_transform(ROW1) == P([-3, -1, 1])
    assert trace_transform(P([1, 0, 0, 0, 1])) == P([-2, 0, 1])


def test_trace_transform_errors():
    with pytest.raises(NotReciprocal):
        trace_transform(P([2, -3, 1]))
    with pytest.raises(OddDegree):
        trace_transform(P([1, 0, 0, 1]))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.floats(0.1, 3.0))
def test_trace_transform_identity(half, x):
    half[0] = half[0] or 1
    p = P.from_half(half)
    m = p.degree // 2
    assert trace_transform(p)(x + 1 / x) == pytest.approx(p(x) / x**m, rel=1e-9, abs=1e-9)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_trace_transform_linear(a, b):
    a[0], b[0] = 1, 2
    pa, pb = P.from_half(a), P.from_half(b)
    assert trace_transform(pa + pb) == trace_transform(pa) + trace_transform(pb)


def test_count_real_roots_examples():
    assert count_real_roots(P([-3, -1, 1]), -2, 2) == 1
    assert count_real_roots(P([-2, 0, 1]), -2, 2) == 2
    assert count_real_roots(P([1, 0, 1]), -100, 100) == 0
    assert count_real_roots(P([1, 0, 1])) == 0


def test_half_open_interval():
    q = P([-1, 0, 1])  # roots -1, 1
    assert count_real_roots(q, -1, 1) == 1
    assert count_real_roots(q, Fraction(-3, 2), 1) == 2
    assert count_real_roots(q, 1, 2) == 0


def test_count_real_roots_strips_multiplicity():
    q = P([-1, 1]) ** 3 * P([2, 1])
    assert count_real_roots(q) == 2


def test_sturm_chain_degrees_decrease():
    chain = SturmChain.build(LEHMER)
    degs = [p.degree for p in chain.polys]
    assert all(a > b for a, b in zip(degs, degs[1:]))


def test_rational_polynomial_sign_at_infinity():
    q = RationalPolynomial([1, 0, 0, -2])
    assert q.sign_at(float("inf")) == -1
    assert q.sign_at(float("-inf")) == 1


def test_unimodular_examples():
    assert unimodular_root_count(ROW1) == 2
    assert unimodular_root_count(cyclotomic(5)) == 4
    assert unimodular_root_count(LEHMER) == 8


def test_roots_above_one_examples():
    assert count_roots_above_one(ROW1) == 1
    assert count_roots_above_one(cyclotomic(5)) == 0
    assert count_roots_above_one(P([1, -3, 1])) == 1


def test_requires_squarefree():
    with pytest.raises(NotSquarefree):
        unimodular_root_count(cyclotomic(5) ** 2)
    with pytest.raises(NotSquarefree):
        count_roots_above_one(P([1, -2, 1]))


def _float_layout(p):
    roots = np.roots([float(a) for a in reversed(p.coeffs)])
    mods = np.abs(roots)
    if np.any((np.abs(mods - 1) > 1e-8) & (np.abs(mods - 1) < 1e-4)):
        return None
    circle = int(np.sum(np.abs(mods - 1) <= 1e-8))
    real = np.abs(roots.imag) <= 1e-8
    if np.any(~real & (np.abs(roots.imag) < 1e-4)):
        return None
    return circle, roots, real


def test_root_layout_sums_to_degree():
    rng = random.Random(3)
    done = 0
    while done < 500:
        d = rng.choice([2, 4, 6, 8, 10, 12])
        half = [rng.randint(-5, 5) for _ in range(d // 2 + 1)]
        half[0] = half[0] or 1
        p = P.from_half(half)
        if not is_squarefree(p):
            continue
        lay = _float_layout(p)
        if lay is None:
            continue
        circle, roots, real = lay
        uni = unimodular_root_count(p)
        above = count_roots_above_one(p)
        inside = count_real_roots(p, 0, 1) - (p(1) == 0)
        negative = count_real_roots(p, float("-inf"), 0)
        complex_off = int(np.sum(~real & (np.abs(np.abs(roots) - 1) > 1e-8)))
        assert uni == circle
        assert uni + above + inside + negative + complex_off == p.degree
        assert above == inside
        done += 1


def test_salem_layout_excludes_plus_minus_one(polys):
    for p in polys:
        if unimodular_root_count(p) == p.degree - 2 and count_roots_above_one(p) == 1:
            assert p(1) != 0 and p(-1) != 0
