"""Reference graph instances used by the classifier and the test corpus.

Each builder returns a fresh validated graph. ``two_internal_obstruction``
is the 13-node instance whose capacity is certified strictly below 4/3 by
whole-graph isomorphism matching (rule thm5).
"""

from __future__ import annotations

from typing import Callable

from .graphs import StorageGraph


def fig1() -> StorageGraph:
    """K=3, 10 nodes; classified exactly 4/3 by rule thm7."""
    return StorageGraph.build(
        3,
        [f"V{i}" for i in range(1, 11)],
        [
            ("V1", "V2", 1),
            ("V1", "V5", 1),
            ("V5", "V6", 1),
            ("V5", "V9", 2),
            ("V2", "V6", 2),
            ("V2", "V3", 2),
            ("V3", "V4", 2),
            ("V6", "V10", 2),
            ("V8", "V10", 2),
            ("V3", "V7", 3),
            ("V4", "V8", 3),
            ("V4", "V7", 3),
        ],
    )


def fig3a() -> StorageGraph:
    """K=2, every node 1-color; capacity 2."""
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 7)],
        [
            ("V1", "V2", 1),
            ("V3", "V4", 2),
            ("V4", "V5", 2),
            ("V3", "V5", 2),
            ("V4", "V6", 2),
        ],
    )


def fig3b() -> StorageGraph:
    """K=2, 1- and 2-color nodes, no adjacent 2-color pair; capacity 3/2."""
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 7)],
        [
            ("V1", "V2", 2),
            ("V1", "V3", 2),
            ("V2", "V4", 2),
            ("V4", "V6", 2),
            ("V2", "V5", 1),
            ("V3", "V5", 1),
            ("V5", "V6", 1),
        ],
    )


def fig3c() -> StorageGraph:
    """K=2, two adjacent 2-color nodes; capacity 4/3."""
    return StorageGraph.build(
        2,
        ["V1", "V2", "V3", "V4"],
        [
            ("V1", "V2", 1),
            ("V1", "V3", 2),
            ("V2", "V4", 2),
        ],
    )


def fig5a() -> StorageGraph:
    """K=2, no internal edge; capacity 4/3 by rule thm2."""
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 7)],
        [
            ("V1", "V2", 1),
            ("V3", "V5", 1),
            ("V4", "V6", 1),
            ("V3", "V4", 2),
            ("V5", "V6", 2),
            ("V2", "V4", 2),
        ],
    )


def fig5b() -> StorageGraph:
    """K=2, internal edges whose residing paths carry 1-color nodes; 4/3."""
    return StorageGraph.build(
        2,
        ["V1", "V2", "V3", "V4", "V5"],
        [
            ("V1", "V2", 1),
            ("V1", "V3", 1),
            ("V3", "V5", 1),
            ("V2", "V3", 2),
            ("V4", "V5", 2),
            ("V2", "V4", 2),
        ],
    )


def fig6() -> StorageGraph:
    """K=2, residing path with a single special node; capacity < 4/3 (thm3)."""
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 8)],
        [
            ("V1", "V3", 1),
            ("V2", "V4", 1),
            ("V3", "V4", 1),
            ("V6", "V7", 1),
            ("V1", "V2", 2),
            ("V3", "V5", 2),
            ("V4", "V6", 2),
        ],
    )


def fig7() -> StorageGraph:
    """K=2, one internal edge, two specials per residing path; 4/3 (thm4)."""
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 12)],
        [
            ("V4", "V5", 1),
            ("V2", "V4", 1),
            ("V4", "V7", 1),
            ("V2", "V5", 1),
            ("V1", "V6", 1),
            ("V1", "V3", 1),
            ("V5", "V7", 1),
            ("V3", "V7", 1),
            ("V3", "V6", 1),
            ("V10", "V11", 1),
            ("V3", "V8", 2),
            ("V4", "V8", 2),
            ("V1", "V2", 2),
            ("V5", "V9", 2),
            ("V7", "V10", 2),
            ("V6", "V10", 2),
        ],
    )


def fig8() -> StorageGraph:
    """K=2, two internal edges; capacity strictly below 4/3 (thm5 fixture)."""
    return two_internal_obstruction()


def two_internal_obstruction() -> StorageGraph:
    return StorageGraph.build(
        2,
        [f"V{i}" for i in range(1, 14)],
        [
            ("V5", "V8", 1),
            ("V1", "V5", 1),
            ("V3", "V5", 1),
            ("V3", "V6", 1),
            ("V2", "V6", 1),
            ("V6", "V8", 1),
            ("V7", "V8", 1),
            ("V4", "V7", 1),
            ("V11", "V12", 1),
            ("V5", "V9", 2),
            ("V1", "V2", 2),
            ("V3", "V4", 2),
            ("V8", "V12", 2),
            ("V7", "V13", 2),
            ("V6", "V10", 2),
        ],
    )


def fig9() -> StorageGraph:
    """K=3 companion of fig1 (same adjacency); capacity 4/3 by rule thm7."""
    return StorageGraph.build(
        3,
        [f"V{i}" for i in range(1, 11)],
        [
            ("V1", "V2", 1),
            ("V1", "V5", 1),
            ("V5", "V6", 1),
            ("V5", "V9", 2),
            ("V2", "V6", 2),
            ("V2", "V3", 2),
            ("V3", "V4", 2),
            ("V6", "V10", 2),
            ("V8", "V10", 2),
            ("V3", "V7", 3),
            ("V4", "V8", 3),
            ("V4", "V7", 3),
        ],
    )


def fig10() -> StorageGraph:
    """K=3, normal 2-color node adjacent to a differently-colored 2-color
    node; capacity at most 5/4 (thm6 witness type c)."""
    return StorageGraph.build(
        3,
        ["V1", "V2", "V3", "V4", "V5"],
        [
            ("V2", "V3", 1),
            ("V1", "V4", 1),
            ("V1", "V2", 2),
            ("V4", "V5", 3),
        ],
    )


FIXTURES: dict[str, Callable[[], StorageGraph]] = {
    "fig1": fig1,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig3c": fig3c,
    "fig5a": fig5a,
    "fig5b": fig5b,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
    "fig10": fig10,
}
