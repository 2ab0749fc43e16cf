"""Characteristic polynomials of powers of companion matrices.

``P_n(x) = det(xI - C^n)`` where ``C`` is the companion matrix of ``P``.
Everything is exact integer arithmetic; Python ints are unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .intpoly import IntPolynomial, NonMonic, PolynomialError


class DimensionError(PolynomialError):
    pass


class DegreeTooSmall(DimensionError):
    pass


class InternalInexactDivision(ArithmeticError):
    """Newton's identities produced a non-integral coefficient (a bug, not bad input)."""


@dataclass(frozen=True)
class BigIntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.rows)
        if any(len(r) != d for r in self.rows):
            raise DimensionError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BigIntMatrix":
        return cls(tuple(tuple(int(a) for a in r) for r in rows))

    @classmethod
    def identity(cls, d: int) -> "BigIntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "BigIntMatrix") -> "BigIntMatrix":
        cols = list(zip(*other.rows))
        return BigIntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def companion(p: IntPolynomial) -> BigIntMatrix:
    """Ones on the superdiagonal, last row ``(-a_0, ..., -a_{d-1})``."""
    if not p.is_monic():
        raise NonMonic(f"polynomial {p} is not monic")
    d = p.degree
    if d < 2:
        raise DegreeTooSmall(f"degree {d} < 2 has no useful companion matrix")
    rows = [[int(j == i + 1) for j in range(d)] for i in range(d - 1)]
    rows.append([-a for a in p.coeffs[:d]])
    return BigIntMatrix.from_rows(rows)


def mat_pow(m: BigIntMatrix, n: int) -> BigIntMatrix:
    if n < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = m
    while n:
        if n & 1:
            result = base if result is None else result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def newton_charpoly(traces: Sequence[int]) -> IntPolynomial:
    """Monic polynomial whose roots have power sums ``traces[0..d-1]``.

    ``k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} t_i``; coefficient of x^(d-k)
    is ``(-1)^k e_k``.
    """
    d = len(traces)
    e = [1]
    for k in range(1, d + 1):
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc += term if i % 2 else -term
        q, r = divmod(acc, k)
        if r:
            raise InternalInexactDivision(f"e_{k}: {acc} not divisible by {k}")
        e.append(q)
    coeffs = [0] * (d + 1)
    for k in range(d + 1):
        coeffs[d - k] = e[k] if k % 2 == 0 else -e[k]
    return IntPolynomial(coeffs)


def char_poly(m: BigIntMatrix) -> IntPolynomial:
    d = m.dim
    traces = []
    acc = m
    for k in range(1, d + 1):
        if k > 1:
            acc = acc @ m
        traces.append(acc.trace())
    return newton_charpoly(traces)


@dataclass(frozen=True)
class PowerPolyResult:
    n: int
    poly: IntPolynomial
    trace_sums: tuple[int, ...]


def _check_input(p: IntPolynomial) -> None:
    if not p.is_monic():
        raise NonMonic(f"polynomial {p} is not monic")
    if p.degree < 2:
        raise DegreeTooSmall(f"degree {p.degree} < 2")


def power_min_poly(p: IntPolynomial, n: int) -> PowerPolyResult:
    _check_input(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    cn = mat_pow(companion(p), n)
    d = p.degree
    traces = []
    acc = cn
    for k in range(1, d + 1):
        if k > 1:
            acc = acc @ cn
        traces.append(acc.trace())
    return PowerPolyResult(n, newton_charpoly(traces), tuple(traces))


def power_sums(p: IntPolynomial, count: int) -> list[int]:
    """``[s_0, s_1, ..., s_count]`` with ``s_j = tr(C^j)`` = sum of j-th powers of roots.

    Uses the companion recurrence ``s_j = -sum_{i=1..d} a_{d-i} s_{j-i}`` (j > d)
    and Newton's identities for j <= d.
    """
    _check_input(p)
    a = p.coeffs
    d = p.degree
    s = [d]
    for j in range(1, count + 1):
        acc = 0
        for i in range(1, min(j, d + 1)):
            acc -= a[d - i] * s[j - i]
        if j <= d:
            acc -= j * a[d - j]
        s.append(acc)
    return s


def power_poly_scan(p: IntPolynomial, n_from: int, n_to: int) -> Iterator[PowerPolyResult]:
    """Yield ``P_n`` for ``n = n_from..n_to`` in ascending order.

    ``tr((C^n)^k) = s_{nk}``, so one power-sum table of length ``d * n_to``
    replaces repeated matrix products.
    """
    _check_input(p)
    if n_from < 1 or n_to < n_from:
        raise ValueError("need 1 <= n_from <= n_to")
    d = p.degree
    s = power_sums(p, d * n_to)
    for n in range(n_from, n_to + 1):
        traces = tuple(s[n * k] for k in range(1, d + 1))
        yield PowerPolyResult(n, newton_charpoly(traces), traces)
