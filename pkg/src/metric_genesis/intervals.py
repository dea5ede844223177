"""Closed intervals with exact rational endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValidationError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> RationalInterval:
        """Parse ``"a/b,c/d"`` (any form :class:`Fraction` accepts on each side)."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValidationError(f"interval must look like 'lo,hi', got {text!r}")
        try:
            return cls(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad interval {text!r}: {exc}") from None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, other: RationalInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_point(self, x) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: RationalInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def split(self, k: int) -> list[RationalInterval]:
        """``k`` equal closed pieces, left to right."""
        step = self.width / k
        return [RationalInterval(self.lo + i * step, self.lo + (i + 1) * step) for i in range(k)]


UNIT = RationalInterval(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class IntervalDistance:
    """Bounds on the distance between a point of one interval and a point of another."""

    d_min: Fraction
    d_max: Fraction

    def __post_init__(self):
        if not 0 <= self.d_min <= self.d_max:
            raise ValidationError(f"bad distance bracket [{self.d_min}, {self.d_max}]")

    @property
    def midpoint(self) -> Fraction:
        # derived convenience scalar, not a distance in its own right
        return (self.d_min + self.d_max) / 2

    def contains(self, other: IntervalDistance) -> bool:
        return self.d_min <= other.d_min and other.d_max <= self.d_max

    def contains_value(self, d) -> bool:
        return self.d_min <= d <= self.d_max


def interval_distance(first: RationalInterval, second: RationalInterval) -> IntervalDistance:
    if first.intersects(second):
        d_min = Fraction(0)
    else:
        d_min = max(first.lo - second.hi, second.lo - first.hi)
    d_max = max(abs(first.hi - second.lo), abs(second.hi - first.lo))
    return IntervalDistance(d_min, d_max)
