"""Probability that a random power of a degree-d Salem number passes the l=1 test.

Model: ``P_n(x) = (x^2 - D x + 1) * prod_i (x^2 - 2 cos(t_i) x + 1)`` with the
angles ``t_i`` uniform on ``[0, pi]`` and ``D = tau^n + tau^-n`` large.

* ``d = 4``: the limit region is ``-1 < 2 cos t < 1``, so the answer is 1/3.
* ``d = 6``: closed form as the area of four congruent curved triangles.
* any even ``d``: count passing nodes on a uniform ``(m+1)^H`` grid.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Optional

import numpy as np

from .intpoly import IntPolynomial, NonMonic
from .salem import Verdict, certify_direct, hits_in_range

HIT_MARGIN = 1e-9
SUPPORTED_DEGREES = (4, 6, 8, 10, 12)
CHUNK = 1 << 18


class ProbabilityError(ValueError):
    pass


class BadDegree(ProbabilityError):
    pass


class GridTooCoarse(ProbabilityError):
    pass


class ToleranceTooTight(ProbabilityError):
    pass


class ProbMethod(str, Enum):
    EXACT_D4 = "ExactD4"
    INTEGRAL_D6 = "IntegralD6"
    GRID = "Grid"


@dataclass
class ProbEstimate:
    d: int
    method: ProbMethod
    value: float
    exact: Optional[str] = None
    m: Optional[int] = None
    h: Optional[float] = None
    D: Optional[float] = None
    symmetry_factor: Optional[int] = None
    N_c: Optional[int] = None
    total: Optional[int] = None
    error_estimate: float = 0.0
    box_half_width: Optional[float] = None
    shell_hits: Optional[int] = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["method"] = self.method.value
        return out


# -- d = 4 -------------------------------------------------------------------

def prob_d4() -> ProbEstimate:
    p = Fraction(1, 3)
    return ProbEstimate(4, ProbMethod.EXACT_D4, float(p), exact=str(p))


# -- d = 6 -------------------------------------------------------------------

def adaptive_simpson(
    f: Callable[[float], float], a: float, b: float, tol: float, max_depth: int = 60
) -> tuple[float, float]:
    """Adaptive Simpson with Richardson correction; returns (value, error estimate)."""

    def simpson(fa, fm, fb, width):
        return width / 6.0 * (fa + 4.0 * fm + fb)

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = simpson(fa, fm, fb, b - a)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    err = 0.0
    while stack:
        a0, b0, fa0, fm0, fb0, s0, tol0, depth = stack.pop()
        mid = 0.5 * (a0 + b0)
        flm, frm = f(0.5 * (a0 + mid)), f(0.5 * (mid + b0))
        left = simpson(fa0, flm, fm0, mid - a0)
        right = simpson(fm0, frm, fb0, b0 - mid)
        delta = left + right - s0
        if depth >= max_depth or abs(delta) <= 15.0 * tol0:
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
        else:
            stack.append((a0, mid, fa0, flm, fm0, left, 0.5 * tol0, depth + 1))
            stack.append((mid, b0, fm0, frm, fb0, right, 0.5 * tol0, depth + 1))
    return total, err


def _clamped_acos(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


def d6_integrand_lower(t: float) -> float:
    c = math.cos(t)
    return _clamped_acos((-5.0 - 6.0 * c) / (6.0 + 6.0 * c)) - (math.pi - t)


def d6_integrand_upper(t: float) -> float:
    c = math.cos(t)
    return _clamped_acos((1.0 - 6.0 * c) / (6.0 - 6.0 * c)) - (math.pi - t)


def d6_limits() -> tuple[float, float, float]:
    return (
        math.acos(math.sqrt(30.0) / 6.0),
        math.acos((math.sqrt(19.0) - 1.0) / 6.0),
        math.acos(math.sqrt(6.0) / 6.0),
    )


def prob_d6_integral(abs_tol: float = 1e-9) -> ProbEstimate:
    if abs_tol < 1e-10:
        raise ToleranceTooTight(f"abs_tol {abs_tol:g} below supported 1e-10")
    t0, t1, t2 = d6_limits()
    scale = 4.0 / math.pi**2
    piece_tol = abs_tol / (2.0 * scale)
    i1, e1 = adaptive_simpson(d6_integrand_lower, t0, t1, piece_tol)
    i2, e2 = adaptive_simpson(d6_integrand_upper, t1, t2, piece_tol)
    return ProbEstimate(6, ProbMethod.INTEGRAL_D6, scale * (i1 + i2), error_estimate=scale * (e1 + e2))


# -- grid --------------------------------------------------------------------

def _check_grid_args(d: int, m: int, D: float) -> None:
    if d not in SUPPORTED_DEGREES:
        raise BadDegree(f"degree must be one of {SUPPORTED_DEGREES}, got {d}")
    if m < 100:
        raise GridTooCoarse(f"m={m} < 100")
    if D < 1e6:
        raise ProbabilityError(f"D={D:g} < 1e6")


def root_arguments(d: int) -> list[float]:
    """Arguments in (0, pi) of the roots of x^(d-2) + 1, ascending."""
    return [(2 * i + 1) * math.pi / (d - 2) for i in range((d - 2) // 2)]


def _index_box(m: int, center: float, half_width: float) -> tuple[int, int]:
    # nodes j*pi/m in [center - w, center + w); closed at a global end
    lo = (center - half_width) * m / math.pi
    hi = (center + half_width) * m / math.pi
    jlo = 0 if lo <= 1e-9 else math.ceil(lo - 1e-9)
    jhi = m if hi >= m - 1e-9 else math.ceil(hi - 1e-9) - 1
    return jlo, jhi


def _mul_quadratic(c: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Multiply rows of ascending coefficients ``c`` by ``x^2 - s x + 1``."""
    n, k = c.shape
    out = np.zeros((n, k + 2))
    out[:, :k] += c
    out[:, 1:k + 1] -= s[:, None] * c
    out[:, 2:] += c
    return out


def _passes(coeffs: np.ndarray) -> np.ndarray:
    d = coeffs.shape[1] - 1
    a = np.abs(coeffs)
    lhs = 2.0 * (d - 2) * a[:, d - 1]
    rhs = d * (a.sum(axis=1) - a[:, 1] - a[:, d - 1])
    return lhs > rhs * (1.0 + HIT_MARGIN)


def _outer_poly(D: float, s_outer: np.ndarray) -> np.ndarray:
    n = s_outer.shape[0]
    c = np.tile(np.array([1.0, -D, 1.0]), (n, 1))
    for i in range(s_outer.shape[1]):
        c = _mul_quadratic(c, s_outer[:, i])
    return c


def _brute_chunk(d: int, m: int, D: float, ranges, flat: np.ndarray) -> int:
    shape = [hi - lo + 1 for lo, hi in ranges]
    idx = np.unravel_index(flat, shape)
    s = np.column_stack([2.0 * np.cos((ix + lo) * math.pi / m) for ix, (lo, _) in zip(idx, ranges)])
    c = _outer_poly(D, s)
    return int(_passes(c).sum())


def _sweep_rows(d: int, m: int, D: float, s_outer: np.ndarray):
    """For each row of outer values, the node-index interval ``[ja, jb]`` of the last
    coordinate that passes (``ja > jb`` means none)."""
    r = _outer_poly(D, s_outer)
    n, k = r.shape  # k = d - 1
    zeros = np.zeros((n, 1))
    alpha = np.hstack([r, zeros, zeros]) + np.hstack([zeros, zeros, r])
    beta = -np.hstack([zeros, r, zeros])
    rest = [j for j in range(d + 1) if j not in (1, d - 1)]
    ar, br = alpha[:, rest], beta[:, rest]
    at, bt = alpha[:, d - 1], beta[:, d - 1]
    c_l, c_r = 2.0 * (d - 2), d * (1.0 + HIT_MARGIN)

    def f(s):
        # s has shape (n,) or (n, q)
        if s.ndim == 1:
            return c_l * np.abs(at + bt * s) - c_r * np.abs(ar + br * s[:, None]).sum(axis=1)
        top = np.abs(at[:, None] + bt[:, None] * s)
        tail = np.abs(ar[:, :, None] + br[:, :, None] * s[:, None, :]).sum(axis=1)
        return c_l * top - c_r * tail

    with np.errstate(divide="ignore", invalid="ignore"):
        bp = np.where(br != 0, -ar / br, 2.0)
    bp = np.clip(np.nan_to_num(bp, nan=2.0, posinf=2.0, neginf=-2.0), -2.0, 2.0)
    pts = np.sort(np.hstack([np.full((n, 1), -2.0), bp, np.full((n, 1), 2.0)]), axis=1)
    fv = f(pts)
    pos = fv > 0
    any_pos = pos.any(axis=1)
    q = pts.shape[1]
    first = np.argmax(pos, axis=1)
    last = q - 1 - np.argmax(pos[:, ::-1], axis=1)
    rows = np.arange(n)

    def crossing(i_out, i_in):
        x0, x1 = pts[rows, i_out], pts[rows, i_in]
        f0, f1 = fv[rows, i_out], fv[rows, i_in]
        with np.errstate(divide="ignore", invalid="ignore"):
            x = x0 + (x1 - x0) * (-f0) / (f1 - f0)
        return np.where(np.isfinite(x), x, x1)

    lo_s = np.where(first > 0, crossing(np.maximum(first - 1, 0), first), -2.0)
    hi_s = np.where(last < q - 1, crossing(np.minimum(last + 1, q - 1), last), 2.0)
    # s decreasing in t: passing t-interval is (acos(hi/2), acos(lo/2))
    u_a = m * np.arccos(np.clip(hi_s / 2.0, -1.0, 1.0)) / math.pi
    u_b = m * np.arccos(np.clip(lo_s / 2.0, -1.0, 1.0)) / math.pi
    ja = np.where(last == q - 1, 0, np.floor(u_a) + 1).astype(np.int64)
    jb = np.where(first == 0, m, np.ceil(u_b) - 1).astype(np.int64)

    def node_pass(j):
        jj = np.clip(j, 0, m)
        return (f(2.0 * np.cos(jj * math.pi / m)) > 0) & (j >= 0) & (j <= m)

    # settle float rounding at the two ends by direct evaluation
    ja = np.where(node_pass(ja - 1), ja - 1, ja)
    ja = np.where(~node_pass(ja) & (ja <= jb), ja + 1, ja)
    jb = np.where(node_pass(jb + 1), jb + 1, jb)
    jb = np.where(~node_pass(jb) & (jb >= ja), jb - 1, jb)
    ja = np.where(any_pos, ja, 1)
    jb = np.where(any_pos, jb, 0)
    return ja, jb


def _sweep_chunk(d: int, m: int, D: float, ranges, flat: np.ndarray):
    """Returns (hits, shell_hits, rows_with_hits) for a chunk of outer tuples."""
    outer, (ilo, ihi) = ranges[:-1], ranges[-1]
    if outer:
        shape = [hi - lo + 1 for lo, hi in outer]
        idx = np.unravel_index(flat, shape)
        jo = [ix + lo for ix, (lo, _) in zip(idx, outer)]
        s_outer = np.column_stack([2.0 * np.cos(j * math.pi / m) for j in jo])
    else:
        jo = []
        s_outer = np.zeros((1, 0))
    ja, jb = _sweep_rows(d, m, D, s_outer)
    a, b = np.maximum(ja, ilo), np.minimum(jb, ihi)
    cnt = np.maximum(b - a + 1, 0)
    shell = ((ja <= ilo) & (ilo <= jb) & (ilo > 0)).astype(np.int64)
    shell += ((ja <= ihi) & (ihi <= jb) & (ihi < m)).astype(np.int64)
    for j, (lo, hi) in zip(jo, outer):
        edge = ((j == lo) & (lo > 0)) | ((j == hi) & (hi < m))
        shell += np.where(edge, cnt, 0)
    return int(cnt.sum()), int(shell.sum()), int((cnt > 0).sum())


def _run_chunks(fn, d, m, D, ranges, n_items, workers):
    starts = list(range(0, max(n_items, 1), CHUNK))
    jobs = [np.arange(s, min(s + CHUNK, n_items), dtype=np.int64) for s in starts]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(fn, d, m, D, ranges, j) for j in jobs]
            return [fu.result() for fu in futures]
    return [fn(d, m, D, ranges, j) for j in jobs]


def _ranges(d: int, m: int, restrict: bool, half_width: float) -> list[tuple[int, int]]:
    H = (d - 2) // 2
    if not restrict:
        return [(0, m)] * H
    return [_index_box(m, c, half_width) for c in root_arguments(d)]


def count_hits(
    d: int,
    m: int,
    D: float,
    restrict_symmetry: bool = False,
    half_width: Optional[float] = None,
    algorithm: str = "sweep",
    workers: int = 1,
) -> tuple[int, int, int]:
    """Passing nodes inside the chosen box: (hits, shell_hits, rows_with_hits).

    ``algorithm="brute"`` evaluates every node; ``"sweep"`` solves the last
    coordinate in closed form per outer tuple.  Both give the same count.
    """
    if half_width is None:
        half_width = math.pi / 8
    ranges = _ranges(d, m, restrict_symmetry, half_width)
    if algorithm == "brute":
        n_items = math.prod(hi - lo + 1 for lo, hi in ranges)
        parts = _run_chunks(_brute_chunk, d, m, D, ranges, n_items, workers)
        return sum(parts), 0, 0
    if algorithm != "sweep":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    n_items = math.prod(hi - lo + 1 for lo, hi in ranges[:-1]) if len(ranges) > 1 else 1
    parts = _run_chunks(_sweep_chunk, d, m, D, ranges, n_items, workers)
    return tuple(sum(p[i] for p in parts) for i in range(3))


def prob_grid(
    d: int,
    m: int,
    D: float = 1e9,
    restrict_symmetry: bool = True,
    half_width: Optional[float] = None,
    algorithm: str = "sweep",
    workers: int = 1,
) -> ProbEstimate:
    """Grid estimate of ``p_d`` with nodes ``j pi / m``, ``j = 0..m`` per axis.

    With ``restrict_symmetry`` only the box around the sorted root arguments
    of ``x^(d-2) + 1`` is scanned and the count is multiplied by ``H!``.  If
    passing nodes touch the box edge the box is widened (up to ``pi/(d-2)``,
    where neighbouring boxes meet) and the scan repeated.
    """
    _check_grid_args(d, m, D)
    H = (d - 2) // 2
    total = (m + 1) ** H
    if not restrict_symmetry:
        hits, _, rows = count_hits(d, m, D, False, algorithm=algorithm, workers=workers)
        factor, w, shell = 1, None, None
    else:
        cap = math.pi / (d - 2)
        w = min(cap, math.pi / 8 if half_width is None else half_width)
        while True:
            hits, shell, rows = count_hits(d, m, D, True, w, algorithm, workers)
            if algorithm == "brute" or shell == 0 or w >= cap:
                break
            w = min(cap, 1.5 * w)
        factor = math.factorial(H)
    value = hits * factor / total
    err = rows * factor / total
    return ProbEstimate(
        d, ProbMethod.GRID, value, m=m, h=math.pi / m, D=D,
        symmetry_factor=factor, N_c=hits * factor, total=total,
        error_estimate=err, box_half_width=w, shell_hits=shell,
    )


def grid_hit_tuples(
    d: int, m: int, D: float = 1e9, restrict_symmetry: bool = True, half_width: Optional[float] = None
) -> Iterator[tuple[float, ...]]:
    """Angles ``(t_1, ..., t_H)`` of every passing node (for plotting the region)."""
    _check_grid_args(d, m, D)
    if half_width is None:
        half_width = math.pi / (d - 2) if d == 4 else math.pi / 8
    ranges = _ranges(d, m, restrict_symmetry, half_width)
    outer, (ilo, ihi) = ranges[:-1], ranges[-1]
    n_items = math.prod(hi - lo + 1 for lo, hi in outer) if outer else 1
    for start in range(0, n_items, CHUNK):
        flat = np.arange(start, min(start + CHUNK, n_items), dtype=np.int64)
        if outer:
            idx = np.unravel_index(flat, [hi - lo + 1 for lo, hi in outer])
            jo = np.column_stack([ix + lo for ix, (lo, _) in zip(idx, outer)])
        else:
            jo = np.zeros((1, 0), dtype=np.int64)
        ja, jb = _sweep_rows(d, m, D, 2.0 * np.cos(jo * math.pi / m))
        for row, a, b in zip(jo, np.maximum(ja, ilo), np.minimum(jb, ihi)):
            head = tuple(float(j * math.pi / m) for j in row)
            for j in range(int(a), int(b) + 1):
                yield head + (j * math.pi / m,)


# -- empirical ---------------------------------------------------------------

@dataclass
class Frequency:
    hits: list[int]
    n_from: int
    n_to: int
    frequency: Fraction = field(init=False)

    def __post_init__(self):
        self.frequency = Fraction(len(self.hits), self.n_to - self.n_from + 1)

    def to_json(self) -> dict:
        return {
            "n_from": self.n_from,
            "n_to": self.n_to,
            "hits": self.hits,
            "count": len(self.hits),
            "frequency": str(self.frequency),
            "frequency_float": float(self.frequency),
        }


def empirical_frequency(p: IntPolynomial, n_from: int, n_to: int) -> Frequency:
    if not p.is_monic():
        raise NonMonic(f"{p} is not monic")
    if certify_direct(p).verdict is not Verdict.SALEM:
        warnings.warn(f"{p} is not a Salem polynomial; frequency is not meaningful")
    return Frequency(hits_in_range(p, n_from, n_to), n_from, n_to)
