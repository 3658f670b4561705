from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from oracles import intersection_is_path
from strictmetric.config import Budgets
from strictmetric.errors import InvalidInput
from strictmetric.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, prism, subdivide_all
from strictmetric.metric import verify_farkas
from strictmetric.paths import check_consistent
from strictmetric.sm import BUDGET, NOT_SM, SM, decide_sm_graph

NOT_SM_GRAPHS = {"K2,4": complete_bipartite(2, 4), "prism": prism(), "K3,3": complete_bipartite(3, 3)}


def _check_witness(g, v):
    assert v.status == NOT_SM and v.lifted
    assert v.witness.host == g
    assert check_consistent(v.witness) is None
    assert not v.certificate.feasible
    assert verify_farkas(v.certificate.constraints, v.certificate.farkas)


@pytest.mark.parametrize("name", list(NOT_SM_GRAPHS))
def test_zoo_and_enumeration_agree(name):
    g = NOT_SM_GRAPHS[name]
    a = decide_sm_graph(g)
    b = decide_sm_graph(g, use_zoo=False)
    _check_witness(g, a)
    _check_witness(g, b)
    assert b.source == "enumeration"


@given(connected_graphs(min_n=2, max_n=5, max_extra=4))
def test_small_graphs_zoo_free_verdicts_agree(g):
    assert decide_sm_graph(g).status == decide_sm_graph(g, use_zoo=False).status


@given(st.sampled_from(list(NOT_SM_GRAPHS)), st.data())
def test_adding_an_edge_keeps_non_metrizability(name, data):
    g = NOT_SM_GRAPHS[name]
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    e = data.draw(st.sampled_from(missing))
    bigger = Graph(g.n, g.edges | {e})
    v = decide_sm_graph(bigger)
    _check_witness(bigger, v)


@given(st.integers(2, 8))
def test_trees_and_cycles(n):
    assert decide_sm_graph(path_graph(n)).status == SM
    if n >= 3:
        assert decide_sm_graph(cycle_graph(n)).status == SM


def test_witness_lifts_through_a_pendant_vertex():
    g = complete_bipartite(2, 4)
    g = Graph(g.n + 1, g.edges | {(0, g.n)})
    v = decide_sm_graph(g)
    _check_witness(g, v)


def test_budget_verdict():
    g = complete_bipartite(2, 4)
    v = decide_sm_graph(g, Budgets(systems=3), use_zoo=False)
    assert v.status == BUDGET and "systems" in v.budget_what


def test_disconnected_graph_is_rejected():
    with pytest.raises(InvalidInput):
        decide_sm_graph(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_verdict_json():
    out = decide_sm_graph(complete_bipartite(2, 4)).to_json()
    assert out["verdict"] == NOT_SM and out["lifted"] and out["farkas"]


@pytest.mark.parametrize("base", [complete_graph(4), complete_bipartite(2, 3)])
def test_full_subdivisions_have_independently_checked_witnesses(base):
    g = subdivide_all(base)
    v = decide_sm_graph(g)
    _check_witness(g, v)
    ps = v.witness.paths()
    assert all(intersection_is_path(p, q) for p in ps for q in ps)
    # positive multipliers whose combined (alternate - chosen) vector has no positive entry
    tot = Counter()
    for i, m in v.certificate.farkas:
        p, q = v.certificate.constraints.constraints[i]
        assert m > 0
        tot.update({e: m for e in zip(q, q[1:])})
        tot.subtract({e: m for e in zip(p, p[1:])})
    folded = Counter()
    for (a, b), k in tot.items():
        folded[(min(a, b), max(a, b))] += k
    assert all(k <= 0 for k in folded.values())


def test_k24_witness_extends_the_listed_partial_system():
    from strictmetric.certificates import certificate

    c = certificate("graph1")
    v = decide_sm_graph(c.graph)
    assert all(v.witness.path(p[0], p[-1]) == p for p in c.listed_paths)
