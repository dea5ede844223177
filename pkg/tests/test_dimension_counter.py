import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metric_genesis.dimension_counter import (exponent_sequence, population, sum_of_squares,
                                              total_points)

F = Fraction


def test_exponent_examples():
    assert exponent_sequence(0).terms == (1,)
    assert exponent_sequence(2).terms == (1, F(3, 2), F(7, 4))
    seq = exponent_sequence(10)
    assert seq[10] == F(2047, 1024)
    assert seq.limit - seq[10] == F(1, 1024)


def test_exponents_increase_to_two():
    terms = exponent_sequence(64).terms
    assert all(a < b < 2 for a, b in zip(terms, terms[1:]))
    assert all(2 - e == F(1, 2 ** j) for j, e in enumerate(terms))


@pytest.mark.parametrize("n, k, exact", [(4, 1, 8), (10 ** 4, 1, 10 ** 6), (2 ** 8, 2, 2 ** 14),
                                         (1, 64, 1)])
def test_population_exact(n, k, exact):
    assert population(n, k).exact == exact


def test_population_approximate():
    pop = population(10, 1)
    assert pop.exact is None
    assert (pop.n, pop.exponent) == (10, F(3, 2))
    assert pop.approx == pytest.approx(31.6227766, rel=1e-9)


@pytest.mark.parametrize("n, total, ratio", [(2, 5, F(5, 8)), (100, 338350, F(338350, 10 ** 6))])
def test_total_points_examples(n, total, ratio):
    report = total_points(n)
    assert report.total == total and report.ratio == ratio
    assert report.summed


def test_large_n_ratio():
    report = total_points(10 ** 6)
    assert not report.summed
    assert abs(report.ratio - F(1, 3)) <= F(2, 10 ** 6)
    assert F(29, 10) <= report.dim_lo <= report.dim_hi <= 3
    assert report.dim_hi - report.dim_lo <= F(1, 10 ** 9)


def test_n_one_has_no_estimate():
    assert total_points(1).dim_estimate is None


@given(st.integers(1, 10 ** 12))
def test_ratio_excess_is_exact(n):
    # the gap to 1/3 is exactly 1/(2n) + 1/(6n^2), hence at most 1/n
    ratio = total_points(n).ratio if n <= 10 ** 4 else F(sum_of_squares(n), n ** 3)
    assert ratio - F(1, 3) == F(1, 2 * n) + F(1, 6 * n * n)
    assert ratio - F(1, 3) <= F(1, n)


@given(st.integers(2, 10 ** 4))
def test_dimension_enclosure_brackets_float_estimate(n):
    report = total_points(n)
    approx = math.log(report.total) / math.log(n)
    assert float(report.dim_lo) - 1e-12 <= approx <= float(report.dim_hi) + 1e-12
