"""Structural predicates on labeled graphs.

Covers node color classification, per-label component decomposition,
internal-edge detection with witness paths, exhaustive residing-path
enumeration, and removal of 1-color nodes. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import Edge, StorageGraph

DEFAULT_PATH_LIMIT = 100_000

# Generous step budget so that witness searches on adversarial graphs fail
# loudly instead of spinning; scaled from the path limit.
_STEP_FACTOR = 64


class PathOverflowError(RuntimeError):
    """Path enumeration exceeded its limit; carries the partial count."""

    def __init__(self, edge: Edge, limit: int, partial: int):
        super().__init__(
            f"more than {limit} residing paths for edge {{{edge.u}, {edge.v}}} "
            f"(stopped after {partial})"
        )
        self.edge = edge
        self.limit = limit
        self.partial = partial


@dataclass(frozen=True)
class NodeClass:
    """Color classification of one node.

    ``special_for`` holds every source k such that the node is a 2-color
    node all of whose k-labeled neighbors are 1-color; it may hold both
    sources at once. A 2-color node with no special source is normal.
    """

    node: str
    sources: frozenset[int]
    special_for: frozenset[int]

    @property
    def color_count(self) -> int:
        return len(self.sources)

    @property
    def is_special(self) -> bool:
        return bool(self.special_for)

    @property
    def is_normal(self) -> bool:
        return self.color_count == 2 and not self.special_for

    def to_dict(self) -> dict:
        return {
            "node": self.node,
            "sources": sorted(self.sources),
            "colors": self.color_count,
            "special_for": sorted(self.special_for),
            "normal": self.is_normal,
        }


@dataclass(frozen=True)
class ResidingPath:
    """A uniform-label simple path joining the endpoints of an internal edge."""

    edge: Edge
    path_label: int
    nodes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"label": self.path_label, "nodes": list(self.nodes)}


def classify_node(g: StorageGraph, v: str) -> NodeClass:
    sources = g.node_sources(v)
    special: set[int] = set()
    if len(sources) == 2:
        for k in sources:
            neighbors = g.neighbors_via(v, k)
            if all(len(g.node_sources(n)) == 1 for n in neighbors):
                special.add(k)
    return NodeClass(node=v, sources=sources, special_for=frozenset(special))


def classify_all(g: StorageGraph) -> dict[str, NodeClass]:
    return {v: classify_node(g, v) for v in g.nodes}


def k_components(
    g: StorageGraph, node_subset: Iterable[str], k: int
) -> list[tuple[str, ...]]:
    """Connected components of the subgraph induced on ``node_subset`` using
    only k-labeled edges with both endpoints inside the subset.

    Nodes without such edges come back as singleton (trivial) components.
    Blocks are sorted internally and ordered by their smallest member.
    """
    return components_via_labels(g, node_subset, [k])


def components_via_labels(
    g: StorageGraph, node_subset: Iterable[str], labels: Iterable[int]
) -> list[tuple[str, ...]]:
    """Like :func:`k_components` but connecting across any of the given labels."""
    label_set = set(labels)
    subset = sorted(set(node_subset))
    subset_set = set(subset)
    adjacency: dict[str, list[str]] = {n: [] for n in subset}
    for e in g.edges:
        if e.w in label_set and e.u in subset_set and e.v in subset_set:
            adjacency[e.u].append(e.v)
            adjacency[e.v].append(e.u)
    seen: set[str] = set()
    blocks: list[tuple[str, ...]] = []
    for start in subset:
        if start in seen:
            continue
        stack, block = [start], []
        seen.add(start)
        while stack:
            node = stack.pop()
            block.append(node)
            for nxt in adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        blocks.append(tuple(sorted(block)))
    blocks.sort(key=lambda b: b[0])
    return blocks


def _label_adjacency(g: StorageGraph, k: int) -> dict[str, tuple[str, ...]]:
    adjacency: dict[str, list[str]] = {}
    for e in g.edges:
        if e.w == k:
            adjacency.setdefault(e.u, []).append(e.v)
            adjacency.setdefault(e.v, []).append(e.u)
    return {n: tuple(sorted(vs)) for n, vs in adjacency.items()}


def _iter_simple_paths(
    g: StorageGraph, start: str, goal: str, k: int, edge: Edge, limit: int
) -> Iterator[tuple[str, ...]]:
    """Yield all simple paths start -> goal over k-labeled edges, depth first
    with lexicographic neighbor order. Raises PathOverflowError once more
    than ``limit`` paths (or a proportional step budget) would be produced.
    """
    adjacency = _label_adjacency(g, k)
    if start not in adjacency or goal not in adjacency:
        return
    yielded = 0
    steps = 0
    max_steps = max(limit, 1) * _STEP_FACTOR
    path = [start]
    on_path = {start}
    # Stack of iterators mirrors the recursive DFS.
    iters = [iter(adjacency[start])]
    while iters:
        steps += 1
        if steps > max_steps:
            raise PathOverflowError(edge, limit, yielded)
        nxt = next(iters[-1], None)
        if nxt is None:
            iters.pop()
            on_path.discard(path.pop())
            continue
        if nxt in on_path:
            continue
        if nxt == goal:
            yielded += 1
            if yielded > limit:
                raise PathOverflowError(edge, limit, limit)
            yield tuple(path) + (goal,)
            continue
        path.append(nxt)
        on_path.add(nxt)
        iters.append(iter(adjacency[nxt]))


def _bfs_witness(g: StorageGraph, start: str, goal: str, k: int) -> tuple[str, ...] | None:
    """Shortest k-labeled path start -> goal (deterministic), or None."""
    adjacency = _label_adjacency(g, k)
    if start not in adjacency or goal not in adjacency:
        return None
    parent: dict[str, str | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt_frontier: list[str] = []
        for node in frontier:
            for nb in adjacency[node]:
                if nb in parent:
                    continue
                parent[nb] = node
                if nb == goal:
                    chain = [goal]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])  # type: ignore[arg-type]
                    return tuple(reversed(chain))
                nxt_frontier.append(nb)
        frontier = nxt_frontier
    return None


def residing_paths(
    g: StorageGraph, edge: Edge, limit: int = DEFAULT_PATH_LIMIT
) -> list[ResidingPath]:
    """All simple paths between the edge's endpoints over every other label.

    Deterministic order: ascending path label, then DFS order with sorted
    neighbors. Returns [] for a non-internal edge.
    """
    found: list[ResidingPath] = []
    for k in range(1, g.k_sources + 1):
        if k == edge.w:
            continue
        remaining = limit - len(found)
        for nodes in _iter_simple_paths(g, edge.u, edge.v, k, edge, remaining):
            found.append(ResidingPath(edge=edge, path_label=k, nodes=nodes))
    return found


def witness_residing_path(g: StorageGraph, edge: Edge) -> ResidingPath | None:
    """One residing path for the edge (shortest, smallest label), if internal."""
    for k in range(1, g.k_sources + 1):
        if k == edge.w:
            continue
        nodes = _bfs_witness(g, edge.u, edge.v, k)
        if nodes is not None:
            return ResidingPath(edge=edge, path_label=k, nodes=nodes)
    return None


def internal_edges(g: StorageGraph) -> list[tuple[Edge, ResidingPath]]:
    """Every edge whose endpoints are joined by a path of a different label,
    with one witness path each, in normalized edge order."""
    out = []
    for e in g.edges:
        witness = witness_residing_path(g, e)
        if witness is not None:
            out.append((e, witness))
    return out


def strip_one_color(g: StorageGraph) -> StorageGraph:
    """Induced subgraph on nodes incident to two or more source labels.

    Applied once, not to fixpoint: removal can create newly 1-color nodes.
    """
    keep = [v for v in g.nodes if len(g.node_sources(v)) >= 2]
    return g.induced(keep)


def analysis_report(g: StorageGraph, path_limit: int = DEFAULT_PATH_LIMIT) -> dict:
    """Full structural report: node classes, (k, k') component decompositions,
    and internal edges with witness and enumerated residing paths."""
    classes = classify_all(g)
    components = []
    for k in range(1, g.k_sources + 1):
        attached = [v for v in g.nodes if k in classes[v].sources]
        for k2 in range(1, g.k_sources + 1):
            if k2 == k:
                continue
            blocks = k_components(g, attached, k2)
            components.append(
                {
                    "source": k,
                    "via": k2,
                    "blocks": [list(b) for b in blocks],
                }
            )
    internals = []
    for edge, witness in internal_edges(g):
        paths = residing_paths(g, edge, path_limit)
        internals.append(
            {
                "edge": edge.to_dict(),
                "witness": witness.to_dict(),
                "residing_paths": [p.to_dict() for p in paths],
            }
        )
    return {
        "K": g.k_sources,
        "nodes": [classes[v].to_dict() for v in g.nodes],
        "components": components,
        "internal_edges": internals,
    }
