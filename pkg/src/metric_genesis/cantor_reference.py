"""Finite stages of the middle-thirds Cantor set, in exact arithmetic."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, ValidationError
from .intervals import UNIT, RationalInterval

DEFAULT_MAX_DEPTH = 64
MAX_DEPTH_ENV = "METRIC_GENESIS_MAX_DEPTH"


def max_depth() -> int:
    raw = os.environ.get(MAX_DEPTH_ENV)
    if raw is None:
        return DEFAULT_MAX_DEPTH
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{MAX_DEPTH_ENV} must be an integer, got {raw!r}") from None


def _check_depth(m):
    if m < 0:
        raise ValidationError(f"depth must be nonnegative, got {m}")
    if m > max_depth():
        raise ValidationError(f"depth {m} exceeds the guard {max_depth()} "
                              f"(set {MAX_DEPTH_ENV} to raise it)")


@dataclass(frozen=True)
class CantorStage:
    depth: int
    intervals: tuple

    @property
    def width(self) -> Fraction:
        return Fraction(1, 3 ** self.depth)


def remove_middle_thirds(intervals):
    out = []
    for iv in intervals:
        third = iv.width / 3
        out.append(RationalInterval(iv.lo, iv.lo + third))
        out.append(RationalInterval(iv.hi - third, iv.hi))
    return out


def stage_numerators(m: int) -> list[int]:
    """Left endpoints of stage ``m`` as numerators over ``3**m``.

    Scaling by 3 turns ``[l, l+1]`` into ``[3l, 3l+3]``; removing the open
    middle third keeps ``[3l, 3l+1]`` and ``[3l+2, 3l+3]``.
    """
    _check_depth(m)
    lows = [0]
    for _ in range(m):
        lows = [x for l in lows for x in (3 * l, 3 * l + 2)]
    return lows


def cantor_stage(m: int) -> CantorStage:
    scale = 3 ** m
    return CantorStage(m, tuple(RationalInterval(Fraction(l, scale), Fraction(l + 1, scale))
                                for l in stage_numerators(m)))


def cantor_measure(m: int) -> Fraction:
    """Total length of stage ``m``, summed interval by interval."""
    lows = stage_numerators(m)
    total = Fraction(sum((l + 1) - l for l in lows), 3 ** m)
    if total != Fraction(2, 3) ** m:
        raise InvariantError(f"stage {m} has length {total}, expected (2/3)^{m}")
    return total


@dataclass
class PropertyReport:
    depth: int
    closed: bool
    largest_contained_width: Fraction | None
    max_endpoint_gap: Fraction | None
    disconnected_proxy: bool
    perfect_proxy: bool
    notes: tuple = ()

    def to_dict(self):
        from .serialize import frac
        return {
            "depth": self.depth,
            "closed": self.closed,
            "largest_contained_width": None if self.largest_contained_width is None
            else frac(self.largest_contained_width),
            "max_endpoint_gap": None if self.max_endpoint_gap is None
            else frac(self.max_endpoint_gap),
            "disconnected_proxy": self.disconnected_proxy,
            "perfect_proxy": self.perfect_proxy,
            "notes": list(self.notes),
        }


def _components(intervals):
    merged = []
    for iv in sorted(intervals):
        if merged and iv.lo <= merged[-1].hi:
            last = merged.pop()
            merged.append(RationalInterval(last.lo, max(last.hi, iv.hi)))
        else:
            merged.append(iv)
    return merged


def property_report(m: int, stage: CantorStage | None = None) -> PropertyReport:
    """Finite-depth proxies for closedness, total disconnectedness and perfectness.

    ``largest_contained_width`` is the longest interval inside the union of the
    stage; ``max_endpoint_gap`` is the largest distance from an endpoint to the
    nearest other endpoint. Both must equal ``(1/3)^m``.
    """
    stage = stage if stage is not None else cantor_stage(m)
    if m == 0:
        return PropertyReport(0, True, None, None, True, True,
                              ("depth 0: disconnectedness and perfectness proxies are vacuous",))
    width = stage.width
    largest = max(iv.width for iv in _components(stage.intervals))
    ends = sorted({e for iv in stage.intervals for e in (iv.lo, iv.hi)})
    steps = [b - a for a, b in zip(ends, ends[1:])]
    # nearest other endpoint is an immediate neighbour in sorted order
    nearest = [min(steps[i - 1] if i else steps[i], steps[i] if i < len(steps) else steps[i - 1])
               for i in range(len(ends))]
    worst = max(nearest)
    return PropertyReport(m, True, largest, worst, largest == width, worst <= width,
                          ("disconnectedness and perfectness are finite-depth proxies",))
