import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metric_genesis.finite_topology import (InseparablePoints, TopologyError, build_space,
                                            closeness_chain, closure, default_points,
                                            enumerate_topologies, interior, is_normal,
                                            neighborhoods_of, space_from_dict, space_to_dict,
                                            validate_family)

from oracles import (all_subsets, closure_oracle, longest_chain_length, masks_to_sets,
                     normal_oracle, topology_families)

SPACES = [s for n in range(1, 5) for s in enumerate_topologies(n)]
SMALL_SPACES = [s for s in SPACES if len(s.points) <= 3]


def fs(text):
    return frozenset(text)


def test_smallest_topology():
    space = build_space(["a"], [set(), {"a"}])
    assert space.opens == (frozenset(), fs("a"))


def test_three_point_space_is_valid(three_point):
    assert set(three_point.opens) == {fs(""), fs("a"), fs("bc"), fs("abc")}


def test_missing_union_and_full_set_reported():
    report = validate_family("ab", [set(), {"a"}, {"b"}])
    assert not report.valid
    assert "missing full set {a,b}" in report.errors
    assert "missing union {a,b} of {a} and {b}" in report.errors
    with pytest.raises(TopologyError, match="missing full set"):
        build_space("ab", [set(), {"a"}, {"b"}])


def test_missing_intersection_reported():
    report = validate_family("abc", [set(), {"a", "b"}, {"b", "c"}, {"a", "b", "c"}])
    assert report.errors == ["missing intersection {b} of {a,b} and {b,c}"]


def test_out_of_universe_member():
    with pytest.raises(TopologyError, match="outside the space"):
        build_space("ab", [set(), {"a", "q"}, {"a", "b"}])


def test_json_loader_completes_family():
    space = space_from_dict({"points": ["a", "b"], "opens": [["a"]]})
    assert set(space.opens) == {fs(""), fs("a"), fs("ab")}
    assert space.notes == ("added empty set", "added full set")


def test_closure_examples(three_point):
    assert closure(three_point, {"b"}) == fs("bc")
    assert closure(three_point, set()) == frozenset()
    assert closure(three_point, set("abc")) == fs("abc")


def test_interior_examples(three_point):
    assert interior(three_point, {"a", "b"}) == fs("a")
    assert interior(three_point, set("abc")) == fs("abc")
    assert interior(three_point, set()) == frozenset()


def test_closure_rejects_unknown_points(three_point):
    with pytest.raises(TopologyError):
        closure(three_point, {"q"})
    with pytest.raises(TopologyError):
        interior(three_point, {"q"})


def test_normal_three_point(three_point):
    report = is_normal(three_point)
    assert report.normal
    assert report.witness == {
        (fs("a"), fs("bc")): (fs("a"), fs("bc")),
        (fs("bc"), fs("a")): (fs("bc"), fs("a")),
    }


def test_discrete_and_sierpinski_are_normal():
    discrete = build_space("ab", [set(), {"a"}, {"b"}, {"a", "b"}])
    sierpinski = build_space("ab", [set(), {"a"}, {"a", "b"}])
    assert is_normal(discrete).normal
    assert is_normal(sierpinski).normal
    assert is_normal(sierpinski).witness == {}


def test_non_normal_witness():
    space = build_space("abc", [set(), {"a"}, {"a", "b"}, {"a", "c"}, {"a", "b", "c"}])
    report = is_normal(space)
    assert not report.normal
    assert report.witness == (fs("b"), fs("c"))


def test_neighborhoods():
    space = build_space("ab", [set(), {"a", "b"}])
    assert neighborhoods_of(space, "a", "paper") == [fs("ab")]


def test_neighborhoods_ordering(three_point):
    assert neighborhoods_of(three_point, "a", "open") == [fs("a"), fs("abc")]
    assert neighborhoods_of(three_point, "b", "paper") == [fs("ab"), fs("bc"), fs("abc")]
    with pytest.raises(TopologyError):
        neighborhoods_of(three_point, "q", "open")


def test_chain_discrete(discrete3):
    chain = closeness_chain(discrete3, "a", "b")
    assert chain.steps == (fs("ac"), fs("a"))
    assert chain.terminated and chain.depth == 2
    assert chain.depth == longest_chain_length(discrete3, "a", "b")


def test_chain_inseparable():
    indiscrete = build_space("ab", [set(), {"a", "b"}])
    with pytest.raises(InseparablePoints) as info:
        closeness_chain(indiscrete, "a", "b")
    assert info.value.details["condition"] == "inseparable"


def test_chain_max_len_zero(discrete3):
    chain = closeness_chain(discrete3, "a", "b", max_len=0)
    assert chain.steps == () and chain.depth == 0
    assert not chain.terminated


def test_chain_rejects_same_point(discrete3):
    with pytest.raises(TopologyError):
        closeness_chain(discrete3, "a", "a")


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 4), (3, 29)])
def test_topology_counts(n, expected):
    spaces = list(enumerate_topologies(n))
    assert len(spaces) == expected
    oracle = topology_families(n)
    assert len(oracle) == expected
    points = default_points(n)
    assert {frozenset(s.opens) for s in spaces} == {masks_to_sets(f, points) for f in oracle}


def test_enumeration_order_is_canonical():
    spaces = list(enumerate_topologies(3))
    keys = [(len(s.opens), [s.key(u) for u in s.opens]) for s in spaces]
    assert keys == sorted(keys)
    assert spaces[0].opens == (frozenset(), fs("abc"))


@pytest.mark.parametrize("n", [0, 5])
def test_enumeration_range(n):
    with pytest.raises(TopologyError):
        list(enumerate_topologies(n))


@pytest.mark.parametrize("space", SPACES, ids=lambda s: " ".join(s.fmt(u) for u in s.opens))
def test_closure_interior_laws(space):
    full = space.full
    for s in all_subsets(space.points):
        c, i = closure(space, s), interior(space, s)
        assert i <= s <= c
        assert closure(space, c) == c
        assert interior(space, i) == i
        assert c == full - interior(space, full - s)
        assert c == closure_oracle(space, s)


@pytest.mark.parametrize("space", SMALL_SPACES, ids=lambda s: " ".join(s.fmt(u) for u in s.opens))
def test_normality_matches_oracle(space):
    assert is_normal(space).normal == normal_oracle(space)


def test_chain_invariants_everywhere():
    for space in SPACES:
        for x in space.points:
            for y in space.points:
                if x == y:
                    continue
                try:
                    chain = closeness_chain(space, x, y)
                except InseparablePoints:
                    assert all(y in u for u in space.opens if x in u)
                    continue
                assert chain.terminated
                assert y not in chain.steps[0]
                assert all(x in s for s in chain.steps)
                assert all(b < a for a, b in zip(chain.steps, chain.steps[1:]))
                assert all(space.is_open(s) for s in chain.steps)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPACES))
def test_space_round_trip(space):
    assert space_from_dict(space_to_dict(space)) == space
