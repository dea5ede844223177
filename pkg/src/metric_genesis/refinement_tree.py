"""Iterated covers of a finite set and their embedding into a rational interval.

A :class:`RefinementTree` is a hierarchy ``N > N_i > N_ij > ...`` in which the
children of every node cover it. Each node is reached by an address (the
tuple of child indices from the root) and each address is assigned a closed
subinterval of a base interval by recursive subdivision. Elements inherit the
interval of their canonical address, which gives an exact metric when leaves
separate elements (``case1_metric``) and interval-valued distance brackets
when the hierarchy is cut at a finite depth (``case2_distances``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import InvariantError, ValidationError
from .intervals import UNIT, IntervalDistance, RationalInterval, interval_distance
from .urysohn import PseudoMetricTable, make_table

STRATEGIES = ("contiguous", "gapped")


class TreeError(ValidationError):
    pass


@dataclass(frozen=True)
class CoverNode:
    members: frozenset
    children: tuple = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class RefinementTree:
    universe: tuple
    root: CoverNode

    def node(self, address) -> CoverNode:
        current = self.root
        for depth, i in enumerate(address):
            if not 0 <= i < len(current.children):
                raise TreeError(f"invalid address {tuple(address)}: index {i} at depth {depth} "
                                f"but node has {len(current.children)} children",
                                {"address": list(address)})
            current = current.children[i]
        return current

    @property
    def depth(self) -> int:
        return max((len(addr) for addr, _ in self.leaves()), default=0)

    def leaves(self) -> Iterator[tuple]:
        """(address, node) for every leaf, in lexicographic address order."""
        stack = [((), self.root)]
        while stack:
            addr, node = stack.pop()
            if node.is_leaf:
                yield addr, node
            else:
                stack.extend((addr + (i,), c) for i, c in reversed(list(enumerate(node.children))))

    def ordered(self, members) -> list:
        pos = {e: i for i, e in enumerate(self.universe)}
        return sorted(members, key=pos.__getitem__)


def _build_node(doc, parent_members, path, universe_set) -> CoverNode:
    if not isinstance(doc, dict) or "members" not in doc:
        raise TreeError(f"node at {path} needs a 'members' list", {"path": list(path)})
    members = frozenset(str(e) for e in doc["members"])
    stray = members - universe_set
    if stray:
        raise TreeError(f"node at {path} has unknown elements {sorted(stray)}",
                        {"path": list(path), "unknown": sorted(stray)})
    if parent_members is not None:
        if not members:
            raise TreeError(f"node at {path} is empty", {"path": list(path)})
        if not members < parent_members:
            raise TreeError(f"node at {path} is not a proper subset of its parent",
                            {"path": list(path)})
    children = tuple(_build_node(c, members, path + (i,), universe_set)
                     for i, c in enumerate(doc.get("children") or ()))
    if children:
        covered = frozenset().union(*(c.members for c in children))
        missing = members - covered
        if missing:
            raise TreeError(f"children of node at {path} miss {sorted(missing)}",
                            {"path": list(path), "missing": sorted(missing)})
    return CoverNode(members, children)


def build_tree(spec) -> RefinementTree:
    """Validate ``{"universe": [...], "root": {"members": [...], "children": [...]}}``."""
    if not isinstance(spec, dict) or "universe" not in spec or "root" not in spec:
        raise TreeError("tree document needs 'universe' and 'root' keys")
    universe = tuple(str(e) for e in spec["universe"])
    if not universe:
        raise TreeError("universe is empty")
    if len(set(universe)) != len(universe):
        raise TreeError("universe has duplicate elements")
    root = _build_node(spec["root"], None, (), frozenset(universe))
    if root.members != frozenset(universe):
        raise TreeError("root members differ from the universe",
                        {"path": [], "missing": sorted(frozenset(universe) - root.members)})
    return RefinementTree(universe, root)


def tree_to_dict(tree: RefinementTree) -> dict:
    def node_doc(node):
        doc = {"members": tree.ordered(node.members)}
        if node.children:
            doc["children"] = [node_doc(c) for c in node.children]
        return doc
    return {"universe": list(tree.universe), "root": node_doc(tree.root)}


@dataclass(frozen=True)
class AddressSet:
    addresses: tuple
    canonical: tuple


def addresses_of(tree: RefinementTree, e) -> AddressSet:
    """Leaf addresses whose node holds ``e``; the canonical one is the smallest."""
    if e not in tree.universe:
        raise TreeError(f"unknown element {e!r}", {"unknown": [e]})
    found = tuple(addr for addr, node in tree.leaves() if e in node.members)
    if not found:
        raise InvariantError(f"element {e!r} lies in no leaf")
    return AddressSet(found, found[0])


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValidationError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")


def child_interval(current: RationalInterval, k: int, i: int, strategy: str) -> RationalInterval:
    """Interval of child ``i`` of a node with ``k`` children.

    ``contiguous`` cuts ``current`` into k equal pieces; ``gapped`` cuts it
    into 2k-1 pieces and keeps the even-numbered ones, so k=2 removes the
    middle third.
    """
    if strategy == "contiguous":
        step = current.width / k
        return RationalInterval(current.lo + i * step, current.lo + (i + 1) * step)
    step = current.width / (2 * k - 1)
    return RationalInterval(current.lo + 2 * i * step, current.lo + (2 * i + 1) * step)


def interval_of(tree: RefinementTree, address, base: RationalInterval = UNIT,
                strategy: str = "contiguous") -> RationalInterval:
    _check_strategy(strategy)
    if base.lo >= base.hi:
        raise ValidationError(f"degenerate base interval [{base.lo}, {base.hi}]")
    current, node = base, tree.root
    for depth, i in enumerate(address):
        k = len(node.children)
        if not 0 <= i < k:
            raise TreeError(f"invalid address {tuple(address)}: index {i} at depth {depth} "
                            f"but node has {k} children", {"address": list(address)})
        current = child_interval(current, k, i, strategy)
        node = node.children[i]
    return current


def leaf_intervals(tree: RefinementTree, base=UNIT, strategy="contiguous") -> list[tuple]:
    """(address, node, interval) per leaf, lexicographic, in one traversal."""
    _check_strategy(strategy)
    if base.lo >= base.hi:
        raise ValidationError(f"degenerate base interval [{base.lo}, {base.hi}]")
    out = []

    def walk(addr, node, current):
        if node.is_leaf:
            out.append((addr, node, current))
            return
        k = len(node.children)
        for i, child in enumerate(node.children):
            walk(addr + (i,), child, child_interval(current, k, i, strategy))

    walk((), tree.root, base)
    return out


def _canonical_leaves(tree, base, strategy) -> dict:
    canonical = {}
    for addr, node, interval in leaf_intervals(tree, base, strategy):
        for e in node.members:
            canonical.setdefault(e, (addr, interval))
    return canonical


@dataclass(frozen=True)
class Case1Result:
    table: PseudoMetricTable
    embedding: dict  # element -> Fraction
    canonical: dict  # element -> address
    shared_leaves: tuple  # (address, elements) for canonical leaves shared by 2+ elements
    singleton_leaves: bool
    base: RationalInterval
    strategy: str

    @property
    def verdict(self) -> str:
        return self.table.verdict


CASE1_NOTE = ("finite stand-in for convergence to a point: elements are separated when "
              "no two of them share a canonical leaf")


def case1_metric(tree: RefinementTree, base: RationalInterval = UNIT,
                 strategy: str = "contiguous") -> Case1Result:
    canonical = _canonical_leaves(tree, base, strategy)
    embedding = {e: canonical[e][1].midpoint for e in tree.universe}
    by_leaf = {}
    for e in tree.universe:
        by_leaf.setdefault(canonical[e][0], []).append(e)
    shared = tuple((addr, tuple(es)) for addr, es in sorted(by_leaf.items()) if len(es) > 1)
    points = tree.universe
    d = [[abs(embedding[x] - embedding[y]) for y in points] for x in points]
    table = make_table(points, d, notes=(CASE1_NOTE,))
    if (table.verdict == "metric") != (not shared):
        raise InvariantError("distinct canonical leaves produced coincident midpoints")
    singletons = all(len(node.members) == 1 for _, node in tree.leaves())
    return Case1Result(table, embedding, {e: canonical[e][0] for e in points}, shared,
                       singletons, base, strategy)


def truncate(tree: RefinementTree, m: int) -> RefinementTree:
    """Drop every node deeper than ``m``; depth-``m`` nodes become leaves."""
    if m < 1:
        raise TreeError(f"truncation depth must be at least 1, got {m}")

    def cut(node, depth):
        if depth == m:
            return CoverNode(node.members)
        return CoverNode(node.members, tuple(cut(c, depth + 1) for c in node.children))

    return RefinementTree(tree.universe, cut(tree.root, 0))


@dataclass(frozen=True)
class IntervalDistanceTable:
    points: tuple
    entries: tuple  # rows of IntervalDistance
    intervals: dict  # element -> RationalInterval at its canonical truncated address
    addresses: dict
    m: int
    base: RationalInterval
    strategy: str
    lower_bound: int | None = None  # the caller's R, recorded only
    notes: tuple = field(default=(), compare=False)

    def __call__(self, x, y) -> IntervalDistance:
        return self.entries[self.points.index(x)][self.points.index(y)]


def case2_distances(tree: RefinementTree, m: int, base: RationalInterval = UNIT,
                    strategy: str = "contiguous", lower_bound: int | None = None
                    ) -> IntervalDistanceTable:
    """Pairwise distance brackets after cutting the hierarchy at depth ``m``."""
    if lower_bound is not None and not m > lower_bound:
        raise TreeError(f"truncation depth m={m} must exceed R={lower_bound}")
    cut = truncate(tree, m)
    canonical = _canonical_leaves(cut, base, strategy)
    points = tree.universe
    intervals = {e: canonical[e][1] for e in points}
    entries = tuple(tuple(interval_distance(intervals[x], intervals[y]) for y in points)
                    for x in points)
    return IntervalDistanceTable(points, entries, intervals,
                                 {e: canonical[e][0] for e in points},
                                 m, base, strategy, lower_bound)


def count_addresses(branching: int, depth: int) -> int:
    """Number of depth-``depth`` address strings over ``branching``-fold covers."""
    if branching < 1 or depth < 0:
        raise ValidationError("need branching >= 1 and depth >= 0")
    return branching ** depth
