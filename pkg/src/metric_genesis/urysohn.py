"""Urysohn separating functions on finite normal spaces.

The construction follows the textbook proof: open sets ``U_q`` indexed by
dyadic rationals ``q`` in [0, 1] with ``closure(U_q) <= U_r`` whenever
``q < r``, refined one dyadic level at a time, and ``f(x) = min{q : x in U_q}``.
On a finite space only finitely many opens exist, so refinement stops as soon
as a level contributes no new open set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import InvariantError, ValidationError
from .finite_topology import FiniteSpace, TopologyError, closure, is_normal

DEFAULT_DEPTH = 8


class UrysohnError(ValidationError):
    pass


@dataclass(frozen=True)
class DyadicFamily:
    space: FiniteSpace
    a: frozenset
    b: frozenset
    levels: dict  # Fraction -> frozenset, keys in increasing order
    depth: int
    requested_depth: int
    stabilized: bool
    notes: tuple = ()

    def items(self):
        return sorted(self.levels.items())


def _interpolate(space: FiniteSpace, inner_closed, outer_open):
    """Smallest open W with inner_closed <= W and closure(W) <= outer_open."""
    for w in space.opens:
        if inner_closed <= w and closure(space, w) <= outer_open:
            return w
    return None


def check_family(family: DyadicFamily) -> list[str]:
    """Every violated family invariant, as messages (empty when the family is sound)."""
    space = family.space
    problems = []
    levels = family.items()
    if not family.a <= family.levels[Fraction(0)]:
        problems.append("A is not inside U_0")
    if family.levels[Fraction(1)] & family.b:
        problems.append("U_1 meets B")
    for (q, u), (r, v) in combinations(levels, 2):
        if not space.is_open(u):
            problems.append(f"U_{q} is not open")
        if not closure(space, u) <= v:
            problems.append(f"closure(U_{q}) is not inside U_{r}")
    return problems


def build_dyadic_family(space: FiniteSpace, a, b, depth: int = DEFAULT_DEPTH) -> DyadicFamily:
    if depth < 1:
        raise UrysohnError(f"depth must be at least 1, got {depth}")
    a = space.subset(a)
    b = space.subset(b)
    if not a or not b:
        raise UrysohnError("A and B must be nonempty")
    if a & b:
        raise UrysohnError(f"A and B intersect in {space.fmt(a & b)}",
                           {"intersection": space.ordered(a & b)})
    normality = is_normal(space)
    if not normality.normal:
        c, d = normality.witness
        raise UrysohnError(
            f"space is not normal: closed sets {space.fmt(c)} and {space.fmt(d)} cannot be separated",
            {"witness": [space.ordered(c), space.ordered(d)]})

    notes = []
    a_closed, b_closed = closure(space, a), closure(space, b)
    if a_closed != a:
        notes.append(f"A replaced by its closure {space.fmt(a_closed)}")
    if b_closed != b:
        notes.append(f"B replaced by its closure {space.fmt(b_closed)}")
    if a_closed & b_closed:
        raise UrysohnError(
            f"closures of A and B intersect in {space.fmt(a_closed & b_closed)}",
            {"intersection": space.ordered(a_closed & b_closed)})

    top = space.full - b_closed
    bottom = _interpolate(space, a_closed, top)
    if bottom is None:
        raise InvariantError("no open set separates A from B in a normal space")
    levels = {Fraction(0): bottom, Fraction(1): top}

    achieved, stabilized = 0, False
    for level in range(1, depth + 1):
        keys = sorted(levels)
        fresh = False
        for q, r in zip(keys, keys[1:]):
            u, v = levels[q], levels[r]
            w = _interpolate(space, closure(space, u), v)
            if w is None:
                raise InvariantError(f"no open set interpolates between U_{q} and U_{r}")
            levels[(q + r) / 2] = w
            fresh = fresh or w not in (u, v)
        achieved = level
        if not fresh:
            stabilized = True
            break

    family = DyadicFamily(space, a_closed, b_closed, dict(sorted(levels.items())),
                          achieved, depth, stabilized, tuple(notes))
    problems = check_family(family)
    if problems:
        raise InvariantError("; ".join(problems))
    return family


@dataclass(frozen=True)
class SeparatingFunction:
    values: dict  # point -> Fraction
    family: DyadicFamily

    def __call__(self, x) -> Fraction:
        return self.values[x]


def urysohn_function(family: DyadicFamily) -> SeparatingFunction:
    values = {}
    for x in family.space.points:
        values[x] = min((q for q, u in family.items() if x in u), default=Fraction(1))
    return SeparatingFunction(values, family)


@dataclass(frozen=True)
class PseudoMetricTable:
    points: tuple
    d: tuple  # rows of Fractions
    verdict: str = ""
    classes: tuple = ()
    notes: tuple = field(default=(), compare=False)

    def __call__(self, x, y) -> Fraction:
        i = self.points.index(x)
        j = self.points.index(y)
        return self.d[i][j]


def zero_classes(points, d) -> list:
    """Groups of two or more points at mutual distance zero."""
    seen, groups = set(), []
    for i, p in enumerate(points):
        if p in seen:
            continue
        group = [points[j] for j in range(len(points)) if d[i][j] == 0]
        seen.update(group)
        if len(group) > 1:
            groups.append(tuple(group))
    return groups


def make_table(points, d, notes=()) -> PseudoMetricTable:
    points = tuple(points)
    d = tuple(tuple(row) for row in d)
    classes = tuple(zero_classes(points, d))
    verdict = "pseudometric" if classes else "metric"
    return PseudoMetricTable(points, d, verdict, classes, tuple(notes))


def induced_pseudometric(f, points=None) -> PseudoMetricTable:
    """Tabulate ``|f(x) - f(y)|`` exactly over ``points``."""
    values = f.values if isinstance(f, SeparatingFunction) else dict(f)
    if points is None:
        points = f.family.space.points if isinstance(f, SeparatingFunction) else tuple(values)
    missing = [p for p in points if p not in values]
    if missing:
        raise UrysohnError(f"function undefined at {', '.join(map(str, missing))}",
                           {"missing": list(missing)})
    d = [[abs(Fraction(values[x]) - Fraction(values[y])) for y in points] for x in points]
    return make_table(points, d)


def _as_int64(rows):
    """Rows rescaled to a common denominator as an int64 array, if that is exact."""
    if not rows:
        return None
    den = 1
    for row in rows:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in row] for row in rows]
    if max(max(r) for r in ints) >= 2 ** 61:
        return None
    return np.array(ints, dtype=np.int64)


@dataclass
class AxiomReport:
    ok: bool
    violation: dict | None = None


def verify_pseudometric(table, labels=None) -> AxiomReport:
    """Check nonnegativity, zero diagonal, symmetry and every triangle inequality."""
    if isinstance(table, PseudoMetricTable):
        labels = table.points
        table = table.d
    rows = [list(r) for r in table]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValidationError("distance table is not square")
    if labels is None:
        labels = tuple(range(n))

    def fail(kind, *idx):
        return AxiomReport(False, {"axiom": kind, "points": [labels[i] for i in idx]})

    for i in range(n):
        if rows[i][i] != 0:
            return fail("zero diagonal", i)
        for j in range(n):
            if rows[i][j] < 0:
                return fail("nonnegativity", i, j)
            if rows[i][j] != rows[j][i]:
                return fail("symmetry", i, j)
    scaled = _as_int64(rows)
    if scaled is not None:
        for j in range(n):
            bad = scaled > scaled[:, j:j + 1] + scaled[j:j + 1, :]
            if bad.any():
                i, k = (int(v) for v in np.argwhere(bad)[0])
                return fail("triangle", i, j, k)
        return AxiomReport(True)
    for i in range(n):
        for j in range(n):
            dij = rows[i][j]
            row_j = rows[j]
            for k in range(n):
                if rows[i][k] > dij + row_j[k]:
                    return fail("triangle", i, j, k)
    return AxiomReport(True)


def separate(space: FiniteSpace, a, b, depth: int = DEFAULT_DEPTH):
    """Family, function and induced table in one call."""
    family = build_dyadic_family(space, a, b, depth)
    f = urysohn_function(family)
    return family, f, induced_pseudometric(f)


__all__ = [
    "AxiomReport", "DyadicFamily", "PseudoMetricTable", "SeparatingFunction", "TopologyError",
    "UrysohnError", "build_dyadic_family", "check_family", "induced_pseudometric", "make_table",
    "separate", "urysohn_function", "verify_pseudometric", "zero_classes",
]
