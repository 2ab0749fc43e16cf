"""Exact real-root and unit-circle root counting.

Sturm chains are built over ``fractions.Fraction``.  Unit-circle roots of a
reciprocal polynomial are counted through the substitution ``y = x + 1/x``,
which sends the circle onto the real segment ``[-2, 2]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .intpoly import IntPolynomial, PolynomialError, is_reciprocal, is_squarefree

INF = float("inf")


class NotReciprocal(PolynomialError):
    pass


class OddDegree(PolynomialError):
    pass


class NotSquarefree(PolynomialError):
    pass


@dataclass(frozen=True)
class RationalPolynomial:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-a for a in self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(k * a for k, a in enumerate(self.coeffs) if k)

    def divmod(self, other: "RationalPolynomial") -> tuple["RationalPolynomial", "RationalPolynomial"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            q = rem[i] / lb
            if q:
                quot[i - db] = q
                for j, c in enumerate(other.coeffs):
                    rem[i - db + j] -= q * c
        return RationalPolynomial(quot), RationalPolynomial(rem[:db])

    def sign_at(self, x) -> int:
        """Sign at a rational point or at +/-inf (leading term decides)."""
        if not self:
            return 0
        if x == INF or x == -INF:
            s = 1 if self.coeffs[-1] > 0 else -1
            if x == -INF and self.degree % 2:
                s = -s
            return s
        v = self(Fraction(x))
        return (v > 0) - (v < 0)


def _as_rational(q) -> RationalPolynomial:
    if isinstance(q, RationalPolynomial):
        return q
    if isinstance(q, IntPolynomial):
        return RationalPolynomial(q.coeffs)
    return RationalPolynomial(q)


def _rational_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while b:
        a, b = b, a.divmod(b)[1]
    return a


def squarefree_part(q: RationalPolynomial) -> RationalPolynomial:
    g = _rational_gcd(q, q.derivative())
    if g.degree <= 0:
        return q
    return q.divmod(g)[0]


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[RationalPolynomial, ...]

    @classmethod
    def build(cls, q) -> "SturmChain":
        q = _as_rational(q)
        chain = [q, q.derivative()]
        while chain[-1].degree > 0:
            r = chain[-2].divmod(chain[-1])[1]
            if not r:
                break
            chain.append(-r)
        return cls(tuple(p for p in chain if p))

    def variations(self, x) -> int:
        signs = [s for s in (p.sign_at(x) for p in self.polys) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo, hi) -> int:
        """Distinct roots in ``(lo, hi]``."""
        return self.variations(lo) - self.variations(hi)


def count_real_roots(q, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots of ``q`` in the half-open interval ``(lo, hi]``."""
    q = _as_rational(q)
    if q.degree < 1:
        return 0
    return SturmChain.build(squarefree_part(q)).count(lo, hi)


def _chebyshev_like(m: int) -> list[IntPolynomial]:
    # T[j](y) = x^j + x^-j with y = x + 1/x
    y = IntPolynomial([0, 1])
    t = [IntPolynomial([2]), y]
    for _ in range(2, m + 1):
        t.append(y * t[-1] - t[-2])
    return t


def trace_transform(p: IntPolynomial) -> IntPolynomial:
    """``Q`` with ``P(x) / x^m = Q(x + 1/x)`` for reciprocal ``P`` of degree ``2m``."""
    if not is_reciprocal(p):
        raise NotReciprocal(f"{p} is not self-reciprocal")
    if p.degree % 2:
        raise OddDegree(f"{p} has odd degree {p.degree}")
    m = p.degree // 2
    t = _chebyshev_like(m)
    q = IntPolynomial([p[m]])
    for j in range(1, m + 1):
        q = q + t[j] * p[m + j]
    return q


def unimodular_root_count(p: IntPolynomial) -> int:
    if not is_squarefree(p):
        raise NotSquarefree(f"{p} has repeated roots")
    q = trace_transform(p)
    inner = count_real_roots(q, -2, 2) - (1 if q(2) == 0 else 0)
    return 2 * inner + (p(1) == 0) + (p(-1) == 0)


def count_roots_above_one(p: IntPolynomial) -> int:
    if not is_squarefree(p):
        raise NotSquarefree(f"{p} has repeated roots")
    return count_real_roots(p, 1, INF)
