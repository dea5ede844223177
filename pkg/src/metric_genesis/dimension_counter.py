"""Exact bookkeeping for the exponent cascade 1, 3/2, 7/4, ... and the sum of squares."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath.libmp import to_rational

from .errors import InvariantError, ValidationError

LIMIT = Fraction(2)
SUMMATION_LIMIT = 10 ** 4
LOG_ENCLOSURE_WIDTH = Fraction(1, 10 ** 9)


def closed_form_exponent(j: int) -> Fraction:
    return 2 - Fraction(1, 2 ** j)


@dataclass(frozen=True)
class ExponentSequence:
    terms: tuple
    limit: Fraction = LIMIT

    def __getitem__(self, j):
        return self.terms[j]


def exponent_sequence(k: int) -> ExponentSequence:
    """``e_0 = 1`` and ``e_{j+1} = e_j + 2^-(j+1)``, checked against ``2 - 2^-j``."""
    if k < 0:
        raise ValidationError(f"k must be nonnegative, got {k}")
    terms = [Fraction(1)]
    for j in range(k):
        terms.append(terms[-1] + Fraction(1, 2 ** (j + 1)))
    for j, e in enumerate(terms):
        if e != closed_form_exponent(j):
            raise InvariantError(f"recurrence gives {e} at j={j}")
    return ExponentSequence(tuple(terms))


def _root_power_of_two(n: int, k: int):
    """Integer r with r ** (2 ** k) == n, or None."""
    r = n
    for _ in range(k):
        s = math.isqrt(r)
        if s * s != r:
            return None
        r = s
    return r


@dataclass(frozen=True)
class Population:
    n: int
    exponent: Fraction
    exact: int | None
    approx: float

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def population(n: int, k: int) -> Population:
    """``n ** e_k``, exact when ``n`` is a perfect ``2**k``-th power."""
    if n < 1 or k < 0:
        raise ValidationError("need n >= 1 and k >= 0")
    e = closed_form_exponent(k)
    root = _root_power_of_two(n, k)
    exact = None if root is None else root ** e.numerator
    with mpmath.workdps(30):
        approx = float(mpmath.power(mpmath.mpf(n), mpmath.mpf(e.numerator) / e.denominator))
    return Population(n, e, exact, approx)


def sum_of_squares(n: int) -> int:
    return n * (n + 1) * (2 * n + 1) // 6


@dataclass(frozen=True)
class DimensionReport:
    n: int
    total: int
    ratio: Fraction
    dim_lo: Fraction | None  # rigorous enclosure of ln(total)/ln(n)
    dim_hi: Fraction | None
    summed: bool  # whether the explicit loop was run as a cross-check

    @property
    def dim_estimate(self) -> Fraction | None:
        if self.dim_lo is None:
            return None
        return (self.dim_lo + self.dim_hi) / 2


def log_ratio_enclosure(num: int, den: int, prec: int = 96) -> tuple[Fraction, Fraction]:
    """Rational bounds on ``ln(num) / ln(den)`` from interval arithmetic."""
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = prec
    try:
        x = iv.log(iv.mpf(num)) / iv.log(iv.mpf(den))
        lo_p, lo_q = to_rational(x._mpi_[0])
        hi_p, hi_q = to_rational(x._mpi_[1])
    finally:
        iv.prec = saved
    lo, hi = Fraction(int(lo_p), int(lo_q)), Fraction(int(hi_p), int(hi_q))
    if hi - lo > LOG_ENCLOSURE_WIDTH:
        raise InvariantError(f"log enclosure too wide: {float(hi - lo)}")
    return lo, hi


def total_points(n: int) -> DimensionReport:
    """``sum_{i<=n} i^2`` with its ratio to ``n^3`` and a log-based dimension estimate."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    total = sum_of_squares(n)
    summed = n <= SUMMATION_LIMIT
    if summed and sum(i * i for i in range(1, n + 1)) != total:
        raise InvariantError(f"summation and closed form disagree at n={n}")
    ratio = Fraction(total, n ** 3)
    if n == 1:
        # ln(1) = 0, the estimate is undefined
        return DimensionReport(n, total, ratio, None, None, summed)
    lo, hi = log_ratio_enclosure(total, n)
    return DimensionReport(n, total, ratio, lo, hi, summed)
