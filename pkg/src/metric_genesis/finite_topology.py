"""Finite topological spaces with exact set operations.

Subsets are plain ``frozenset`` values of point identifiers. Wherever a
deterministic choice is needed, subsets are ordered by cardinality and then
lexicographically by the positions of their members in ``space.points``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import ValidationError

MAX_ENUMERATION_POINTS = 4


class TopologyError(ValidationError):
    pass


class InseparablePoints(TopologyError):
    """Every open set containing one point also contains the other."""


@dataclass
class ValidationReport:
    valid: bool
    errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self):
        return {"valid": self.valid, "errors": list(self.errors), "notes": list(self.notes)}


def _fmt(order: dict, s) -> str:
    return "{" + ",".join(sorted(s, key=lambda p: order.get(p, len(order)))) + "}"


def _key(order: dict, s) -> tuple:
    return (len(s), tuple(sorted(order[p] for p in s)))


def validate_family(points, opens) -> ValidationReport:
    """Check that ``opens`` is a topology on ``points`` without raising."""
    report = ValidationReport(valid=True)
    points = list(points)
    if not points:
        report.errors.append("point set is empty")
    if len(set(points)) != len(points):
        dupes = sorted({p for p in points if points.count(p) > 1})
        report.errors.append(f"duplicate points: {', '.join(dupes)}")
    order = {p: i for i, p in enumerate(dict.fromkeys(points))}
    family = []
    for s in opens:
        s = frozenset(s)
        stray = s - order.keys()
        if stray:
            report.errors.append(f"open set {_fmt(order, s)} has members outside the space: "
                                 + ", ".join(sorted(stray)))
            continue
        if s not in family:
            family.append(s)
    if report.errors:
        report.valid = False
        return report

    present = set(family)
    full = frozenset(order)
    if frozenset() not in present:
        report.errors.append("missing empty set")
    if full not in present:
        report.errors.append(f"missing full set {_fmt(order, full)}")
    family.sort(key=lambda s: _key(order, s))
    for s, t in combinations(family, 2):
        union, meet = s | t, s & t
        if union not in present:
            report.errors.append(f"missing union {_fmt(order, union)} of "
                                 f"{_fmt(order, s)} and {_fmt(order, t)}")
            break
        if meet not in present:
            report.errors.append(f"missing intersection {_fmt(order, meet)} of "
                                 f"{_fmt(order, s)} and {_fmt(order, t)}")
            break
    report.valid = not report.errors
    return report


@dataclass(frozen=True)
class FiniteSpace:
    """A finite point set with a validated family of open sets.

    Build instances with :func:`build_space` or :func:`space_from_dict`; the
    constructor itself trusts its arguments.
    """

    points: tuple
    opens: tuple
    notes: tuple = field(default=(), compare=False)

    @cached_property
    def order(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def full(self) -> frozenset:
        return frozenset(self.points)

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.opens)

    @cached_property
    def closed_sets(self) -> tuple:
        return tuple(sorted((self.full - u for u in self.opens), key=self.key))

    def key(self, s) -> tuple:
        return _key(self.order, s)

    def fmt(self, s) -> str:
        return _fmt(self.order, s)

    def sorted_subsets(self, family: Iterable) -> list:
        return sorted(family, key=self.key)

    def subset(self, members) -> frozenset:
        """Coerce ``members`` to a subset, rejecting unknown points."""
        if isinstance(members, str):
            members = [members]
        s = frozenset(members)
        stray = s - self.full
        if stray:
            raise TopologyError(f"not points of the space: {', '.join(sorted(stray))}",
                                {"unknown_points": sorted(stray)})
        return s

    def is_open(self, s) -> bool:
        return frozenset(s) in self.open_set

    def is_closed(self, s) -> bool:
        return self.full - frozenset(s) in self.open_set

    def ordered(self, s) -> list:
        return sorted(s, key=self.order.__getitem__)


def build_space(points, opens, notes=()) -> FiniteSpace:
    report = validate_family(points, opens)
    if not report.valid:
        raise TopologyError("; ".join(report.errors), report.to_dict())
    points = tuple(points)
    order = {p: i for i, p in enumerate(points)}
    family = sorted({frozenset(s) for s in opens}, key=lambda s: _key(order, s))
    return FiniteSpace(points, tuple(family), tuple(notes))


def space_from_dict(doc, complete: bool = True) -> FiniteSpace:
    """Load ``{"points": [...], "opens": [[...], ...]}``.

    With ``complete`` the empty set and the full set are added when absent
    and the addition is recorded in ``space.notes``.
    """
    if not isinstance(doc, dict) or "points" not in doc or "opens" not in doc:
        raise TopologyError("space document needs 'points' and 'opens' keys")
    points = [str(p) for p in doc["points"]]
    opens = [frozenset(str(p) for p in s) for s in doc["opens"]]
    notes = []
    if complete:
        if frozenset() not in opens:
            opens.append(frozenset())
            notes.append("added empty set")
        if frozenset(points) not in opens:
            opens.append(frozenset(points))
            notes.append("added full set")
    return build_space(points, opens, notes)


def space_to_dict(space: FiniteSpace) -> dict:
    return {"points": list(space.points), "opens": [space.ordered(u) for u in space.opens]}


def closure(space: FiniteSpace, s) -> frozenset:
    s = space.subset(s)
    result = space.full
    for c in space.closed_sets:
        if s <= c:
            result &= c
    return result


def interior(space: FiniteSpace, s) -> frozenset:
    s = space.subset(s)
    result = frozenset()
    for u in space.opens:
        if u <= s:
            result |= u
    return result


@dataclass
class NormalityReport:
    normal: bool
    # violating closed pair when not normal, otherwise {(A, B): (U, V)}
    witness: object


def separating_opens(space: FiniteSpace, a, b):
    """First disjoint open pair (U, V) with a <= U and b <= V, or None."""
    for u in space.opens:
        if not a <= u:
            continue
        for v in space.opens:
            if b <= v and not u & v:
                return u, v
    return None


def is_normal(space: FiniteSpace) -> NormalityReport:
    closed = [c for c in space.closed_sets if c]
    witness = {}
    for a, b in product(closed, repeat=2):
        if a & b:
            continue
        pair = separating_opens(space, a, b)
        if pair is None:
            return NormalityReport(False, (a, b))
        witness[(a, b)] = pair
    return NormalityReport(True, witness)


def neighborhoods_of(space: FiniteSpace, x, kind: str = "paper") -> list:
    """Neighbourhoods of ``x``.

    ``kind="paper"`` gives every subset holding ``x`` and at least one other
    point, open or not; ``kind="open"`` gives the open sets holding ``x``.
    """
    if x not in space.order:
        raise TopologyError(f"unknown point {x!r}", {"unknown_points": [x]})
    if kind == "open":
        return [u for u in space.opens if x in u]
    if kind != "paper":
        raise TopologyError(f"unknown neighbourhood kind {kind!r}")
    others = [p for p in space.points if p != x]
    found = [frozenset((x, *extra))
             for r in range(1, len(others) + 1)
             for extra in combinations(others, r)]
    return space.sorted_subsets(found)


@dataclass(frozen=True)
class ClosenessChain:
    target: str
    excluded: str
    steps: tuple
    terminated: bool

    @property
    def depth(self) -> int:
        return len(self.steps)


def _largest(space, candidates):
    # largest cardinality first, then lexicographically smallest
    best = None
    for u in candidates:
        if best is None or len(u) > len(best) or (len(u) == len(best) and space.key(u) < space.key(best)):
            best = u
    return best


def closeness_chain(space: FiniteSpace, x, excluded, max_len=None) -> ClosenessChain:
    """Greedy strictly decreasing chain of open sets around ``x`` avoiding ``excluded``.

    ``terminated`` is true when the chain stopped because no smaller open set
    containing ``x`` exists, which always happens on a finite space. When the
    chain is cut short by ``max_len`` it is false.
    """
    for p in (x, excluded):
        if p not in space.order:
            raise TopologyError(f"unknown point {p!r}", {"unknown_points": [p]})
    if x == excluded:
        raise TopologyError("target and excluded point must differ")
    first = _largest(space, (u for u in space.opens if x in u and excluded not in u))
    if first is None:
        raise InseparablePoints(
            f"no open set contains {x} but not {excluded}",
            {"condition": "inseparable", "target": x, "excluded": excluded})
    steps = []
    current = first
    while current is not None:
        if max_len is not None and len(steps) >= max_len:
            return ClosenessChain(x, excluded, tuple(steps), False)
        steps.append(current)
        current = _largest(space, (u for u in space.opens if x in u and u < current))
    return ClosenessChain(x, excluded, tuple(steps), True)


def chain_to_dict(space: FiniteSpace, chain: ClosenessChain) -> dict:
    return {
        "target": chain.target,
        "excluded": chain.excluded,
        "steps": [space.ordered(s) for s in chain.steps],
        "depth": chain.depth,
        "terminated": chain.terminated,
    }


def default_points(n: int) -> tuple:
    return tuple("abcdefghijklmnopqrstuvwxyz"[:n])


def _preorders(n: int) -> Iterator[set]:
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(pairs)):
        rel = {pairs[t] for t in range(len(pairs)) if bits >> t & 1}
        if all((i, k) in rel for (i, j) in rel for (j2, k) in rel if j == j2 and i != k):
            yield rel


def enumerate_topologies(n: int) -> Iterator[FiniteSpace]:
    """Every topology on ``n`` labelled points, in canonical order.

    Finite topologies correspond one to one with preorders; each preorder
    contributes the family of its up-closed subsets.
    """
    if not 1 <= n <= MAX_ENUMERATION_POINTS:
        raise TopologyError(f"n must be between 1 and {MAX_ENUMERATION_POINTS}, got {n}")
    points = default_points(n)
    order = {p: i for i, p in enumerate(points)}
    subsets = [frozenset(points[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    found = []
    for rel in _preorders(n):
        opens = [s for s in subsets
                 if all(points[j] in s for (i, j) in rel if points[i] in s)]
        found.append(sorted(opens, key=lambda s: _key(order, s)))
    found.sort(key=lambda fam: (len(fam), [_key(order, s) for s in fam]))
    for fam in found:
        yield FiniteSpace(points, tuple(fam))
