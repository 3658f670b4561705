from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from oracles import intersection_is_path, naive_consistent_systems
from strictmetric.errors import BudgetExceeded, InvalidInput, NotPersistent
from strictmetric.graph import complete_graph, cycle_graph, path_graph
from strictmetric.paths import (
    PathSystem,
    check_consistent,
    check_partial,
    contract_system,
    count_consistent_systems,
    enumerate_consistent_systems,
    persistent_edges,
    persistent_edges_by_trees,
    tree_of_root,
    unique_path_system,
)


def _systems(g, limit=40):
    out = []
    for s in enumerate_consistent_systems(g):
        out.append(s)
        if len(out) >= limit:
            break
    return out


@given(connected_graphs(min_n=2, max_n=4))
def test_enumeration_matches_naive_filter(g):
    ours = {frozenset(s.paths()) for s in enumerate_consistent_systems(g)}
    assert ours == naive_consistent_systems(g.n, g.sorted_edges)


@given(connected_graphs(min_n=2, max_n=6))
def test_enumerated_systems_pass_independent_check(g):
    for s in _systems(g):
        ps = s.paths()
        assert all(intersection_is_path(p, q) for p in ps for q in ps)
        assert check_consistent(s) is None


@given(connected_graphs(min_n=2, max_n=6))
def test_enumeration_is_deterministic_and_duplicate_free(g):
    a = _systems(g, 200)
    b = _systems(g, 200)
    assert a == b
    assert len(set(a)) == len(a)


@given(connected_graphs(min_n=2, max_n=6))
def test_persistence_definitions_agree(g):
    for s in _systems(g):
        assert persistent_edges(s) == persistent_edges_by_trees(s)


@given(connected_graphs(min_n=2, max_n=6))
def test_trees_reproduce_chosen_paths(g):
    for s in _systems(g, 10):
        for x in range(g.n):
            t = tree_of_root(s, x)
            assert len(t.edges) == g.n - 1
            for y in range(g.n):
                if y != x:
                    assert t.path_to(y) == s.path(x, y)


@given(connected_graphs(min_n=3, max_n=6))
def test_contracting_persistent_edge_keeps_consistency(g):
    for s in _systems(g, 15):
        for e in sorted(persistent_edges(s)):
            s2, vmap = contract_system(s, e)
            assert s2.host.n == g.n - 1
            assert check_consistent(s2) is None


def test_contracting_non_persistent_edge_names_a_witness():
    g = cycle_graph(4)
    s = next(iter(enumerate_consistent_systems(g)))
    bad = sorted(set(g.edges) - persistent_edges(s))[0]
    with pytest.raises(NotPersistent) as exc:
        contract_system(s, bad)
    x = exc.value.witness
    u, v = bad
    if x in bad:
        assert s.path(u, v) != (u, v)
    else:
        pu, pv = s.path(x, u), s.path(x, v)
        assert not (pv == pu + (v,) or pu == pv + (u,))


def test_triangle_has_four_systems():
    assert count_consistent_systems(complete_graph(3)) == 4


def test_tree_has_one_system():
    s = unique_path_system(path_graph(5))
    assert s.path(0, 4) == (0, 1, 2, 3, 4)


def test_inconsistent_system_is_reported():
    g = cycle_graph(4)
    # P[0,1] leaves through 3 while P[0,2] uses the edge 12
    s = PathSystem(g, [(0, 3, 2, 1), (0, 1, 2), (0, 3), (1, 2), (1, 0, 3), (2, 3)])
    v = check_consistent(s)
    assert v is not None


def test_system_validation():
    g = cycle_graph(3)
    with pytest.raises(InvalidInput):
        PathSystem(g, [(0, 1), (1, 2)])  # pair (0, 2) missing
    with pytest.raises(InvalidInput):
        PathSystem(g, [(0, 1), (1, 2), (0, 2), (0, 1, 2)])  # two paths for (0, 2)


@given(connected_graphs(min_n=2, max_n=5))
def test_system_json_round_trip(g):
    for s in _systems(g, 5):
        assert PathSystem.from_json(s.to_json()) == s


def test_partial_check():
    assert check_partial([(0, 1, 2), (1, 2)]) is None
    assert check_partial([(0, 1, 2), (0, 3, 2)]) is not None  # two paths for one pair
    assert check_partial([(0, 1, 2), (1, 3, 2)]) is not None  # subpath disagrees with listing
    assert check_partial([(0, 1, 2, 3), (0, 4, 2, 5, 3)]) is not None  # intersection {0, 2, 3} is no path


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_consistent_systems(complete_graph(5), budget=20))


def test_fixed_paths_are_respected():
    g = complete_graph(4)
    fixed = [(0, 2, 1)]
    got = list(enumerate_consistent_systems(g, fixed=fixed))
    assert got and all(s.path(0, 1) == (0, 2, 1) for s in got)
    everything = [s for s in enumerate_consistent_systems(g) if s.path(0, 1) == (0, 2, 1)]
    assert got == everything


@given(st.integers(3, 7))
def test_cycle_system_count(n):
    count = count_consistent_systems(cycle_graph(n))
    assert count == len(naive_consistent_systems(n, cycle_graph(n).sorted_edges))
