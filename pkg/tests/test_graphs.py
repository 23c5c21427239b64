"""Graph parsing, validation errors, queries, and serialization."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from storagecode.graphs import GraphError, StorageGraph, parse_graph, serialize_graph

from conftest import ALL_FIXTURES, fixture_graph, fixture_json


def test_fig1_parses_with_expected_shape():
    g = parse_graph(json.dumps(fixture_json("fig1")))
    assert g.k_sources == 3
    assert len(g.nodes) == 10
    assert len(g.edges) == 12


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_files_match_builders(name):
    """The committed JSON fixtures are exactly the in-package instances."""
    assert parse_graph(fixture_json(name)) == fixture_graph(name)


def test_two_node_graph_parses():
    g = parse_graph({"K": 1, "nodes": ["V1", "V2"], "edges": [{"u": "V1", "v": "V2", "w": 1}]})
    assert g.node_sources("V1") == frozenset({1})
    assert g.node_sources("V2") == frozenset({1})


def test_self_loop_rejected():
    with pytest.raises(GraphError) as err:
        parse_graph({"K": 1, "nodes": ["V1"], "edges": [{"u": "V1", "v": "V1", "w": 1}]})
    assert err.value.kind == "self_loop"
    assert "V1" in str(err.value)


def test_duplicate_edge_rejected():
    doc = {
        "K": 2,
        "nodes": ["V1", "V2"],
        "edges": [{"u": "V1", "v": "V2", "w": 1}, {"u": "V2", "v": "V1", "w": 2}],
    }
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "duplicate_edge"


def test_isolated_node_rejected():
    doc = {
        "K": 1,
        "nodes": ["V1", "V2", "V3"],
        "edges": [{"u": "V1", "v": "V2", "w": 1}],
    }
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "isolated_node"
    assert "V3" in str(err.value)


def test_label_out_of_range_rejected():
    doc = {"K": 2, "nodes": ["V1", "V2"], "edges": [{"u": "V1", "v": "V2", "w": 3}]}
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "bad_label"


def test_unknown_keys_rejected():
    with pytest.raises(GraphError) as err:
        parse_graph({"K": 1, "nodes": [], "edges": [], "extra": 1})
    assert err.value.kind == "unknown_key"
    doc = {"K": 1, "nodes": ["V1", "V2"], "edges": [{"u": "V1", "v": "V2", "w": 1, "x": 0}]}
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "unknown_key"


def test_malformed_json_rejected():
    with pytest.raises(GraphError) as err:
        parse_graph("{not json")
    assert err.value.kind == "malformed"


def test_unknown_endpoint_rejected():
    doc = {"K": 1, "nodes": ["V1", "V2"], "edges": [{"u": "V1", "v": "V9", "w": 1}]}
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "unknown_endpoint"
    assert "V9" in str(err.value)


def test_duplicate_node_rejected():
    doc = {"K": 1, "nodes": ["V1", "V1"], "edges": []}
    with pytest.raises(GraphError) as err:
        parse_graph(doc)
    assert err.value.kind == "duplicate_node"


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_parse_serialize_roundtrip(name):
    g = fixture_graph(name)
    assert parse_graph(serialize_graph(g)) == g


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_degree_sum_is_twice_edge_count(name):
    g = fixture_graph(name)
    assert sum(len(g.incidence[v]) for v in g.nodes) == 2 * len(g.edges)


def test_node_sources_examples():
    g = fixture_graph("fig1")
    assert g.node_sources("V1") == frozenset({1})
    assert g.node_sources("V5") == frozenset({1, 2})
    with pytest.raises(KeyError):
        g.node_sources("nope")


def test_neighbors_via_sorted():
    g = fixture_graph("fig1")
    assert g.neighbors_via("V5", 1) == ("V1", "V6")
    assert g.neighbors_via("V5", 2) == ("V9",)
    assert g.neighbors_via("V5", 3) == ()


def test_edges_normalized_and_sorted():
    g = StorageGraph.build(1, ["B", "A", "C"], [("C", "B", 1), ("B", "A", 1)])
    assert [(e.u, e.v) for e in g.edges] == [("A", "B"), ("B", "C")]


@st.composite
def random_graph_docs(draw):
    k = draw(st.integers(1, 3))
    n = draw(st.integers(2, 6))
    nodes = [f"V{i}" for i in range(1, n + 1)]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]]
    chosen = draw(
        st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs), unique=True)
    )
    edges = [
        {"u": u, "v": v, "w": draw(st.integers(1, k))} for u, v in chosen
    ]
    touched = {x for e in edges for x in (e["u"], e["v"])}
    return {"K": k, "nodes": sorted(touched), "edges": edges}


@settings(deadline=None, max_examples=50)
@given(random_graph_docs())
def test_random_documents_roundtrip(doc):
    g = parse_graph(doc)
    again = parse_graph(serialize_graph(g))
    assert again == g
    assert sum(len(g.incidence[v]) for v in g.nodes) == 2 * len(g.edges)
