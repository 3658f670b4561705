from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from strictmetric.errors import BudgetExceeded, Graph6Error, InvalidInput
from strictmetric.graph import (
    Graph,
    blocks,
    compliant_edges,
    complete_bipartite,
    complete_graph,
    contract_edge,
    cycle_graph,
    enumerate_simple_paths,
    is_two_connected,
    parse_graph6,
    subdivide,
    subdivide_all,
    suppress_degree_two,
    to_graph6,
)


def _iso(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())


@given(connected_graphs(min_n=1, max_n=9, max_extra=12))
def test_graph6_round_trip(g):
    assert parse_graph6(to_graph6(g)) == g


@given(connected_graphs(min_n=2, max_n=9, max_extra=12))
def test_graph6_matches_networkx_writer(g):
    ours = to_graph6(g)
    theirs = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
    assert ours == theirs


def test_graph6_large_size_header():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    s = to_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s) == g


def test_graph6_header_prefix_accepted():
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("B w", 1),  # space is below the printable range
        ("D", 1),  # five vertices need two adjacency bytes
        ("Bww", 2),  # trailing byte
        ("B~", 1),  # padding bits set in the last byte
        ("~?", 2),  # truncated long header
    ],
)
def test_graph6_error_offsets(text, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(text)
    assert exc.value.offset == offset


def test_graph_rejects_loops_and_bad_vertices():
    with pytest.raises(InvalidInput):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(InvalidInput):
        Graph.from_edges(3, [(0, 3)])


@given(connected_graphs(min_n=2, max_n=7, max_extra=8))
def test_blocks_partition_edges(g):
    bl = blocks(g)
    owners = {e: [b for b in bl if set(e) <= b] for e in g.edges}
    assert all(len(v) == 1 for v in owners.values())


@given(connected_graphs(min_n=3, max_n=7, max_extra=8))
def test_two_connected_matches_networkx(g):
    assert is_two_connected(g) == nx.is_biconnected(g.to_networkx())


@given(connected_graphs(min_n=2, max_n=6), st.data())
def test_simple_paths_match_networkx(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != u))
    ours = set(enumerate_simple_paths(g, u, v))
    theirs = {tuple(p) for p in nx.all_simple_paths(g.to_networkx(), u, v)}
    assert ours == theirs


def test_simple_path_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_simple_paths(complete_graph(6), 0, 1, cap=10)


@pytest.mark.parametrize("base", [complete_graph(4), complete_graph(5)])
@pytest.mark.parametrize("times", [1, 2])
def test_suppression_undoes_subdivision(base, times):
    sup = suppress_degree_two(subdivide_all(base, times))
    assert not sup.multigraph
    assert _iso(sup.base, base)


def test_suppression_reports_parallel_flat_paths():
    theta = complete_bipartite(2, 3)
    sup = suppress_degree_two(theta)
    assert sup.multigraph
    assert sorted(sup.multiplicity.values()) == [3]


def test_subdivide_once():
    g = subdivide(complete_graph(4), (0, 1))
    assert (g.n, g.m) == (5, 7)
    assert not g.has_edge(0, 1)
    assert g.degree(4) == 2


@given(connected_graphs(min_n=3, max_n=7, max_extra=8), st.data())
def test_contract_edge_counts(g, data):
    e = data.draw(st.sampled_from(g.sorted_edges))
    h, vmap = contract_edge(g, e)
    assert h.n == g.n - 1
    assert vmap[e[0]] == vmap[e[1]]
    common = set(g.adj[e[0]]) & set(g.adj[e[1]])
    assert h.m == g.m - 1 - len(common)


def test_compliant_edges_on_triangle_and_chorded_cycle():
    assert compliant_edges(complete_graph(3)) == {(0, 1), (0, 2), (1, 2)}
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert compliant_edges(c4) == {(0, 2)}


def test_every_cycle_edge_is_compliant():
    assert compliant_edges(cycle_graph(5)) == set(cycle_graph(5).edges)
