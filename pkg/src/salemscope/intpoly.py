"""Dense integer polynomials with exact (arbitrary-precision) coefficients.

Coefficients are stored in ascending order: ``coeffs[k]`` is the coefficient
of ``x**k``.  Instances are immutable and always trimmed of trailing zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    pass


class NonMonic(PolynomialError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_text(cls, text: str, half: bool = False) -> "IntPolynomial":
        """Parse whitespace-separated ascending coefficients.

        With ``half=True`` the input is ``a_0 .. a_{d/2}`` and the tail is
        mirrored, so ``"1 -1 -1"`` becomes ``x^4 - x^3 - x^2 - x + 1``.
        """
        try:
            vals = [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError as exc:
            raise PolynomialError(f"bad coefficient list {text!r}: {exc}") from None
        if not vals:
            raise PolynomialError("empty coefficient list")
        if half:
            return cls.from_half(vals)
        return cls(vals)

    @classmethod
    def from_half(cls, half: Sequence[int]) -> "IntPolynomial":
        half = list(half)
        return cls(half + half[-2::-1])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return self.lead == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        if not self or not other:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive(self) -> "IntPolynomial":
        g = self.content()
        if g == 0:
            return self
        if self.lead < 0:
            g = -g
        return IntPolynomial(a // g for a in self.coeffs)

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Exact division by a monic divisor; quotient and remainder stay integral."""
        if not divisor.is_monic():
            raise NonMonic("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i]
            if q:
                quot[i - dd] = q
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= q * b
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_text(self) -> str:
        return " ".join(str(a) for a in self.coeffs)


ONE = IntPolynomial([1])
X = IntPolynomial([0, 1])


def is_reciprocal(p: IntPolynomial) -> bool:
    c = p.coeffs
    return c == c[::-1]


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    # lc(b)^(deg a - deg b + 1) * a mod b, all integral
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    while len(rem) - 1 >= db and rem:
        lr = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lb * r for r in rem]
        for j, c in enumerate(b.coeffs):
            rem[shift + j] -= lr * c
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return IntPolynomial(rem)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd via the primitive pseudo-remainder sequence."""
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = pseudo_remainder(a, b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive()


def is_squarefree(p: IntPolynomial) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p
    pp = p.primitive()
    # exact division of primitive p by primitive g
    q, r = _exact_divide(pp, g)
    assert not r, "squarefree part: inexact division"
    return q


def _exact_divide(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    quot = [0] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        if rem[i] == 0:
            continue
        q, r = divmod(rem[i], lb)
        if r:
            return IntPolynomial(quot), IntPolynomial(rem)
        quot[i - db] = q
        for j, c in enumerate(b.coeffs):
            rem[i - db + j] -= q * c
    return IntPolynomial(quot), IntPolynomial(rem[:db])


def euler_phi(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPolynomial:
    """Phi_k, obtained by dividing x^k - 1 by Phi_j for every proper divisor j."""
    if k < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = IntPolynomial([-1] + [0] * (k - 1) + [1])
    for j in range(1, k):
        if k % j == 0:
            num, rem = num.divmod_monic(cyclotomic(j))
            assert not rem
    return num


def cyclotomic_candidates(d: int) -> list[int]:
    """All k with phi(k) <= d.  phi(k) >= sqrt(k/2) gives k <= 2 d^2."""
    return [k for k in range(1, 2 * d * d + 1) if euler_phi(k) <= d]


def cyclotomic_factors(p: IntPolynomial) -> list[int]:
    out = []
    for k in cyclotomic_candidates(p.degree):
        _, rem = p.divmod_monic(cyclotomic(k))
        if not rem:
            out.append(k)
    return out


def cyclotomic_free(p: IntPolynomial) -> bool:
    for k in cyclotomic_candidates(p.degree):
        _, rem = p.divmod_monic(cyclotomic(k))
        if not rem:
            return False
    return True


def cyclotomic_product(*ks: int) -> IntPolynomial:
    out = ONE
    for k in ks:
        out = out * cyclotomic(k)
    return out
