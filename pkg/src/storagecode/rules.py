"""Hypothesis checks behind the capacity rules (thm1 .. thm7).

Each predicate inspects graph structure only; no codes are built here.
Rules thm2, thm3 and thm4 are defined for two-source instances and raise
InapplicableError otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import figures
from .graphs import Edge, StorageGraph
from .isomorphism import labeled_isomorphic
from .structure import (
    DEFAULT_PATH_LIMIT,
    ResidingPath,
    classify_all,
    internal_edges,
    residing_paths,
    strip_one_color,
)


class InapplicableError(ValueError):
    """A rule was asked about a graph outside its stated scope."""


def check_c2(g: StorageGraph) -> bool:
    """Every node is 1-color (capacity exactly 2)."""
    return all(len(g.node_sources(v)) == 1 for v in g.nodes)


def check_c3_2(g: StorageGraph) -> bool:
    """All nodes 1- or 2-color, at least one 2-color node, and no edge joins
    two 2-color nodes (capacity exactly 3/2)."""
    counts = {v: len(g.node_sources(v)) for v in g.nodes}
    if any(c > 2 for c in counts.values()):
        return False
    if not any(c == 2 for c in counts.values()):
        return False
    return all(not (counts[e.u] == 2 and counts[e.v] == 2) for e in g.edges)


def _require_two_sources(g: StorageGraph, rule: str) -> None:
    if g.k_sources != 2:
        raise InapplicableError(f"rule {rule} applies only to K=2 instances")


def check_thm2(g: StorageGraph) -> bool:
    """After dropping 1-color nodes, no internal edge remains (K=2)."""
    _require_two_sources(g, "thm2")
    return not internal_edges(strip_one_color(g))


@dataclass(frozen=True)
class Thm3Witness:
    """A residing path of only 2-color nodes with at most one special node."""

    edge: Edge
    path: ResidingPath
    specials: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "edge": self.edge.to_dict(),
            "path": self.path.to_dict(),
            "specials": list(self.specials),
        }


def check_thm3(
    g: StorageGraph, path_limit: int = DEFAULT_PATH_LIMIT
) -> Thm3Witness | None:
    """Find a residing path with no 1-color node and <= 1 special node (K=2).

    Such a path certifies that capacity is strictly below 4/3.
    """
    _require_two_sources(g, "thm3")
    classes = classify_all(g)
    for edge, _witness in internal_edges(g):
        for path in residing_paths(g, edge, path_limit):
            if any(classes[v].color_count == 1 for v in path.nodes):
                continue
            specials = tuple(v for v in path.nodes if classes[v].is_special)
            if len(specials) <= 1:
                return Thm3Witness(edge=edge, path=path, specials=specials)
    return None


def check_thm4(
    g: StorageGraph,
    path_limit: int = DEFAULT_PATH_LIMIT,
    strict: bool = False,
) -> bool:
    """Exactly one internal edge, and enough special nodes on its residing
    paths (K=2).

    Default reading exempts paths that contain a 1-color node (those are
    already harmless); ``strict`` demands two specials on every path.
    """
    _require_two_sources(g, "thm4")
    internals = internal_edges(g)
    if len(internals) != 1:
        return False
    edge, _ = internals[0]
    classes = classify_all(g)
    for path in residing_paths(g, edge, path_limit):
        has_one_color = any(classes[v].color_count == 1 for v in path.nodes)
        if has_one_color and not strict:
            continue
        specials = [v for v in path.nodes if classes[v].is_special]
        if len(specials) < 2:
            return False
    return True


def check_thm5(g: StorageGraph) -> bool:
    """Whole-graph match against the known 13-node obstruction, up to node
    renaming and source-label swap."""
    return labeled_isomorphic(g, figures.two_internal_obstruction())


@dataclass(frozen=True)
class Thm6Witness:
    """One local structure that caps the rate below 4/3.

    kind "a": node with M >= 4 colors, bound (M+1)/M.
    kind "b": 3-color node adjacent to a node with >= 2 colors, bound 5/4.
    kind "c": normal 2-color node adjacent to a 2-color node carrying a
              different source pair, bound 5/4.
    """

    kind: str
    node: str
    neighbor: str | None
    bound: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "node": self.node,
            "neighbor": self.neighbor,
            "bound": str(self.bound),
        }


def check_thm6(g: StorageGraph) -> list[Thm6Witness]:
    """All occurrences of the three structures, deterministically ordered."""
    classes = classify_all(g)
    witnesses: list[Thm6Witness] = []
    for v in g.nodes:
        m = classes[v].color_count
        if m >= 4:
            witnesses.append(
                Thm6Witness(kind="a", node=v, neighbor=None, bound=Fraction(m + 1, m))
            )
    for v in g.nodes:
        if classes[v].color_count != 3:
            continue
        for e in g.incidence[v]:
            other = e.other(v)
            if classes[other].color_count >= 2:
                witnesses.append(
                    Thm6Witness(kind="b", node=v, neighbor=other, bound=Fraction(5, 4))
                )
    for v in g.nodes:
        if not classes[v].is_normal:
            continue
        for e in g.incidence[v]:
            other = e.other(v)
            if (
                classes[other].color_count == 2
                and classes[other].sources != classes[v].sources
            ):
                witnesses.append(
                    Thm6Witness(kind="c", node=v, neighbor=other, bound=Fraction(5, 4))
                )
    return witnesses


def check_thm7(g: StorageGraph) -> bool:
    """No thm6 structure, and no internal edge after dropping 1-color nodes
    (any number of sources)."""
    if check_thm6(g):
        return False
    return not internal_edges(strip_one_color(g))
