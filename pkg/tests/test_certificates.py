from __future__ import annotations

import json
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strictmetric.certificates import (
    builtin_certificates,
    certificate,
    combination,
    extend_to_full_system,
    load_certificates,
    verify_certificate,
    weights_satisfy,
)
from strictmetric.errors import InvalidInput
from strictmetric.graph import enumerate_simple_paths
from strictmetric.metric import decide_strictly_metric

CERTS = builtin_certificates()
LABELS = [c.label for c in CERTS]


def test_ten_builtin_certificates():
    assert LABELS == [f"graph{k}" for k in range(1, 10)] + ["persistent"]


@pytest.mark.parametrize("label", LABELS)
def test_certificate_verifies(label):
    r = verify_certificate(certificate(label))
    assert r.passed, r.failures


@pytest.mark.parametrize("label", LABELS)
def test_json_round_trip(label):
    c = certificate(label)
    doc = json.dumps({"vertex_numbering": "1-based", "certificates": [c.to_json()]})
    (back,) = load_certificates(doc)
    assert back.to_json() == c.to_json()


@pytest.mark.parametrize("label", [f"graph{k}" for k in range(1, 10)])
def test_extension_is_not_strictly_metric(label):
    c = certificate(label)
    s = extend_to_full_system(c)
    assert s is not None
    assert not decide_strictly_metric(s).feasible


@given(st.sampled_from([c for c in CERTS if not c.forced_zero]), st.data())
def test_replacing_an_alternate_breaks_cancellation(c, data):
    k = data.draw(st.integers(0, len(c.inequalities) - 1))
    lhs, rhs = c.inequalities[k]
    others = [q for q in enumerate_simple_paths(c.graph, lhs[0], lhs[-1])
              if q not in (lhs, rhs) and set(zip(q, q[1:])) != set(zip(rhs, rhs[1:]))]
    if not others:
        return
    new_rhs = data.draw(st.sampled_from(others))
    ineqs = list(c.inequalities)
    ineqs[k] = (lhs, new_rhs)
    mutated = replace(c, inequalities=ineqs)
    r = verify_certificate(mutated)
    assert not r.cancellation_ok
    assert any(f.startswith("(ii)") for f in r.failures)


def test_dropping_a_listed_path_breaks_structure():
    c = certificate("graph1")
    lhs = c.inequalities[0][0]
    mutated = replace(c, listed_paths=[p for p in c.listed_paths if p != lhs])
    r = verify_certificate(mutated)
    assert any(f.startswith("(i)") for f in r.failures)


def test_persistent_residual_and_weights():
    c = certificate("persistent")
    assert combination(c) == {(2, 3): 2}
    assert weights_satisfy(c)


def test_malformed_file_is_rejected():
    with pytest.raises(InvalidInput):
        load_certificates("{}")
    with pytest.raises(InvalidInput):
        load_certificates("not json")
    bad = {"vertex_numbering": "1-based", "certificates": [{"label": "x", "n": 3, "edges": [[1, 2]],
                                                            "paths": [[1, 2]],
                                                            "inequalities": [{"lhs": [[2, 3]], "rhs": [[1, 3]]}]}]}
    with pytest.raises(InvalidInput):
        load_certificates(json.dumps(bad))
