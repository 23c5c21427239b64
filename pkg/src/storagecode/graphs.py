"""Source-labeled storage graphs: parsing, validation, and basic queries.

A problem instance is a graph whose nodes hold coded symbols and whose
edges are each labeled with one of K source indices; the pair of nodes on
an edge must be able to decode that edge's source. Instances are immutable
after construction and safe to share.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Validation or format error; ``kind`` identifies the failed rule."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True, order=True)
class Edge:
    """Undirected labeled edge, normalized so u < v lexicographically."""

    u: str
    v: str
    w: int

    @staticmethod
    def make(u: str, v: str, w: int) -> "Edge":
        if u == v:
            raise GraphError("self_loop", f"self-loop at node {u!r}")
        a, b = sorted((u, v))
        return Edge(a, b, int(w))

    def pair(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, node: str) -> str:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise KeyError(node)

    def to_dict(self) -> dict:
        return {"u": self.u, "v": self.v, "w": self.w}


@dataclass(frozen=True)
class StorageGraph:
    """K sources, named nodes, and labeled edges (at most one per node pair).

    Construct through :meth:`build` or :func:`parse_graph`, which validate
    all instance invariants. ``build(..., allow_isolated=True)`` is used for
    derived subgraphs, where isolated nodes are legitimate.
    """

    k_sources: int
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    @staticmethod
    def build(
        k_sources: int,
        nodes: Iterable[str],
        edges: Iterable[Edge | tuple[str, str, int]],
        allow_isolated: bool = False,
    ) -> "StorageGraph":
        node_list = list(nodes)
        if int(k_sources) < 1:
            raise GraphError("bad_k", f"K must be >= 1, got {k_sources}")
        seen = set()
        for n in node_list:
            if not isinstance(n, str) or not n:
                raise GraphError("bad_node", f"node id {n!r} is not a non-empty string")
            if n in seen:
                raise GraphError("duplicate_node", f"duplicate node id {n!r}")
            seen.add(n)
        normalized: list[Edge] = []
        pairs = set()
        for e in edges:
            edge = e if isinstance(e, Edge) else Edge.make(*e)
            edge = Edge.make(edge.u, edge.v, edge.w)
            if edge.u not in seen or edge.v not in seen:
                missing = edge.u if edge.u not in seen else edge.v
                raise GraphError("unknown_endpoint", f"edge endpoint {missing!r} is not a declared node")
            if edge.pair() in pairs:
                raise GraphError("duplicate_edge", f"duplicate edge {{{edge.u}, {edge.v}}}")
            pairs.add(edge.pair())
            if not 1 <= edge.w <= int(k_sources):
                raise GraphError(
                    "bad_label",
                    f"edge {{{edge.u}, {edge.v}}} label {edge.w} outside [1, {k_sources}]",
                )
            normalized.append(edge)
        normalized.sort()
        if not allow_isolated:
            touched = {n for e in normalized for n in e.pair()}
            for n in node_list:
                if n not in touched:
                    raise GraphError("isolated_node", f"isolated node {n!r}")
        return StorageGraph(
            k_sources=int(k_sources), nodes=tuple(node_list), edges=tuple(normalized)
        )

    @cached_property
    def incidence(self) -> Mapping[str, tuple[Edge, ...]]:
        table: dict[str, list[Edge]] = {n: [] for n in self.nodes}
        for e in self.edges:
            table[e.u].append(e)
            table[e.v].append(e)
        return {n: tuple(es) for n, es in table.items()}

    @cached_property
    def edge_set(self) -> frozenset[tuple[str, str, int]]:
        return frozenset((e.u, e.v, e.w) for e in self.edges)

    def node_sources(self, v: str) -> frozenset[int]:
        """Set of source labels on edges incident to v."""
        if v not in self.incidence:
            raise KeyError(f"unknown node {v!r}")
        return frozenset(e.w for e in self.incidence[v])

    def neighbors_via(self, v: str, k: int) -> tuple[str, ...]:
        """Neighbors of v across edges labeled k, sorted."""
        if v not in self.incidence:
            raise KeyError(f"unknown node {v!r}")
        return tuple(sorted(e.other(v) for e in self.incidence[v] if e.w == k))

    def edge_between(self, u: str, v: str) -> Edge | None:
        a, b = sorted((u, v))
        for e in self.incidence.get(a, ()):
            if e.pair() == (a, b):
                return e
        return None

    def induced(self, keep: Iterable[str]) -> "StorageGraph":
        """Induced subgraph on the given nodes; isolated nodes permitted."""
        kept = [n for n in self.nodes if n in set(keep)]
        kept_set = set(kept)
        edges = [e for e in self.edges if e.u in kept_set and e.v in kept_set]
        return StorageGraph.build(self.k_sources, kept, edges, allow_isolated=True)

    def to_dict(self) -> dict:
        return {
            "K": self.k_sources,
            "nodes": list(self.nodes),
            "edges": [e.to_dict() for e in self.edges],
        }


_GRAPH_KEYS = {"K", "nodes", "edges"}
_EDGE_KEYS = {"u", "v", "w"}


def parse_graph(document: str | bytes | dict) -> StorageGraph:
    """Parse and validate the JSON graph format.

    ``{"K": <int>, "nodes": ["V1", ...], "edges": [{"u": .., "v": .., "w": ..}]}``
    Unknown keys are rejected; every validation failure names the offending
    element in the error message.
    """
    if isinstance(document, (str, bytes)):
        try:
            payload = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError("malformed", f"invalid JSON: {exc}") from exc
    else:
        payload = document
    if not isinstance(payload, dict):
        raise GraphError("malformed", "graph document must be a JSON object")
    unknown = set(payload) - _GRAPH_KEYS
    if unknown:
        raise GraphError("unknown_key", f"unknown graph keys: {sorted(unknown)}")
    missing = _GRAPH_KEYS - set(payload)
    if missing:
        raise GraphError("malformed", f"missing graph keys: {sorted(missing)}")
    if not isinstance(payload["K"], int) or isinstance(payload["K"], bool):
        raise GraphError("bad_k", f"K must be an integer, got {payload['K']!r}")
    if not isinstance(payload["nodes"], list):
        raise GraphError("malformed", "nodes must be a list")
    if not isinstance(payload["edges"], list):
        raise GraphError("malformed", "edges must be a list")
    edges = []
    for item in payload["edges"]:
        if not isinstance(item, dict):
            raise GraphError("malformed", f"edge entry {item!r} must be an object")
        unknown = set(item) - _EDGE_KEYS
        if unknown:
            raise GraphError("unknown_key", f"unknown edge keys: {sorted(unknown)} in {item!r}")
        if set(item) != _EDGE_KEYS:
            raise GraphError("malformed", f"edge entry {item!r} must have keys u, v, w")
        if not isinstance(item["u"], str) or not isinstance(item["v"], str):
            raise GraphError("malformed", f"edge endpoints must be strings in {item!r}")
        if not isinstance(item["w"], int) or isinstance(item["w"], bool):
            raise GraphError("bad_label", f"edge label must be an integer in {item!r}")
        edges.append(Edge.make(item["u"], item["v"], item["w"]))
    return StorageGraph.build(payload["K"], payload["nodes"], edges)


def serialize_graph(g: StorageGraph) -> str:
    return json.dumps(g.to_dict(), indent=2) + "\n"
