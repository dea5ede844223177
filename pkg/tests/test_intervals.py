from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metric_genesis.errors import ValidationError
from metric_genesis.intervals import IntervalDistance, RationalInterval, interval_distance

F = Fraction


def iv(lo, hi):
    return RationalInterval(F(lo), F(hi))


@pytest.mark.parametrize("first, second, bracket", [
    (iv(0, F(1, 2)), iv(F(1, 2), 1), (0, 1)),
    (iv(0, F(1, 3)), iv(F(2, 3), 1), (F(1, 3), 1)),
    (iv(F(1, 4), F(1, 2)), iv(F(1, 4), F(1, 2)), (0, F(1, 4))),
])
def test_interval_distance_examples(first, second, bracket):
    d = interval_distance(first, second)
    assert (d.d_min, d.d_max) == bracket


def test_parse():
    assert RationalInterval.parse("1/3, 2/3") == iv(F(1, 3), F(2, 3))
    with pytest.raises(ValidationError):
        RationalInterval.parse("1/3")
    with pytest.raises(ValidationError):
        RationalInterval.parse("1,0")


def test_floats_refused():
    with pytest.raises(TypeError):
        RationalInterval(0.5, 1)


intervals = st.tuples(st.fractions(-5, 5), st.fractions(-5, 5)).map(
    lambda p: RationalInterval(min(p), max(p)))


@given(intervals, intervals, st.fractions(0, 1), st.fractions(0, 1))
def test_bracket_holds_sampled_points(first, second, s, t):
    d = interval_distance(first, second)
    x = first.lo + s * first.width
    y = second.lo + t * second.width
    assert d.contains_value(abs(x - y))
    assert d == interval_distance(second, first)


@given(intervals, intervals)
def test_bracket_is_attained(first, second):
    d = interval_distance(first, second)
    ends = [abs(x - y) for x in (first.lo, first.hi) for y in (second.lo, second.hi)]
    assert d.d_max == max(ends)
    if not first.intersects(second):
        assert d.d_min == min(ends)


def test_bad_bracket():
    with pytest.raises(ValidationError):
        IntervalDistance(F(1), F(0))
