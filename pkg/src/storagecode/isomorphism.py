"""Labeled-graph isomorphism by backtracking.

Two instances match when some node bijection plus a permutation of the
source labels maps one edge set onto the other. Instances here are tiny
(tens of nodes), so invariant pruning plus most-constrained-first search
is ample.
"""

from __future__ import annotations

from itertools import permutations

from .graphs import StorageGraph


def _node_key(g: StorageGraph, v: str, relabel: dict[int, int]) -> tuple[int, ...]:
    """Per-node invariant: sorted multiset of incident (relabeled) labels."""
    return tuple(sorted(relabel[e.w] for e in g.incidence[v]))


def _match(g1: StorageGraph, g2: StorageGraph, relabel: dict[int, int]) -> bool:
    """Node bijection search, with g1's labels mapped through ``relabel``."""
    identity = {k: k for k in range(1, g2.k_sources + 1)}
    keys1 = {v: _node_key(g1, v, relabel) for v in g1.nodes}
    keys2 = {v: _node_key(g2, v, identity) for v in g2.nodes}
    if sorted(keys1.values()) != sorted(keys2.values()):
        return False
    order = sorted(g1.nodes, key=lambda v: -len(g1.incidence[v]))
    target_edges = g2.edge_set
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v1: str, v2: str) -> bool:
        if keys1[v1] != keys2[v2]:
            return False
        for e in g1.incidence[v1]:
            other = e.other(v1)
            if other in assignment:
                a, b = sorted((v2, assignment[other]))
                if (a, b, relabel[e.w]) not in target_edges:
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v1 = order[i]
        for v2 in g2.nodes:
            if v2 in used or not consistent(v1, v2):
                continue
            assignment[v1] = v2
            used.add(v2)
            if backtrack(i + 1):
                return True
            del assignment[v1]
            used.discard(v2)
        return False

    return backtrack(0)


def labeled_isomorphic(g1: StorageGraph, g2: StorageGraph) -> bool:
    """True when the graphs match up to node renaming and a permutation of
    the source labels."""
    if g1.k_sources != g2.k_sources:
        return False
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False
    k = g1.k_sources
    counts2: dict[int, int] = {}
    for e in g2.edges:
        counts2[e.w] = counts2.get(e.w, 0) + 1
    for perm in permutations(range(1, k + 1)):
        relabel = {i + 1: perm[i] for i in range(k)}
        counts1: dict[int, int] = {}
        for e in g1.edges:
            counts1[relabel[e.w]] = counts1.get(relabel[e.w], 0) + 1
        if counts1 != counts2:
            continue
        if _match(g1, g2, relabel):
            return True
    return False
