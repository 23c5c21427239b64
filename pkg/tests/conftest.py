"""Shared helpers: fixture loading and graph transformations."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from storagecode import figures
from storagecode.graphs import StorageGraph

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

RATE_43_FIXTURES = ["fig1", "fig3c", "fig5a", "fig5b", "fig7", "fig9"]
ALL_FIXTURES = [
    "fig1",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig5a",
    "fig5b",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
]


def fixture_graph(name: str) -> StorageGraph:
    return figures.FIXTURES[name]()


def fixture_json(name: str) -> dict:
    return json.loads((FIXTURE_DIR / f"{name}.json").read_text())


@pytest.fixture
def fig(request):
    return fixture_graph(request.param)


def random_toy_instance(rng: random.Random):
    """Random small graph plus a random (usually broken) linear code, sized
    so that exhaustive decoding stays feasible."""
    from storagecode.construct import LinearCode
    from storagecode.fields import FpMatrix

    k = rng.choice([2, 3])
    p = rng.choice([2, 3])
    lw = rng.choice([1, 2])
    n = rng.randrange(2, 7)
    nodes = [f"N{i}" for i in range(n)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((nodes[j], nodes[i], rng.randrange(1, k + 1)))
    for _ in range(rng.randrange(0, n)):
        a, b = rng.sample(nodes, 2)
        a, b = sorted((a, b))
        if not any(e[0] == a and e[1] == b for e in edges):
            edges.add((a, b, rng.randrange(1, k + 1)))
    g = StorageGraph.build(k, nodes, sorted(edges))
    lv = rng.choice([1, 2])
    generators = {
        v: FpMatrix.from_rows(
            [[rng.randrange(p) for _ in range(k * lw)] for _ in range(lv)], p
        )
        for v in nodes
    }
    code = LinearCode(p=p, k_sources=k, lw=lw, lv=lv, generators=generators)
    return g, code


def permute_graph(
    g: StorageGraph, rng: random.Random, permute_labels: bool = True
) -> tuple[StorageGraph, dict[str, str], dict[int, int]]:
    """Deterministically rename nodes and (optionally) permute source labels."""
    fresh = [f"N{i:03d}" for i in range(len(g.nodes))]
    rng.shuffle(fresh)
    node_map = dict(zip(g.nodes, fresh))
    labels = list(range(1, g.k_sources + 1))
    if permute_labels:
        shuffled = labels[:]
        rng.shuffle(shuffled)
        label_map = dict(zip(labels, shuffled))
    else:
        label_map = {k: k for k in labels}
    edges = [(node_map[e.u], node_map[e.v], label_map[e.w]) for e in g.edges]
    return (
        StorageGraph.build(g.k_sources, sorted(fresh), edges),
        node_map,
        label_map,
    )
