"""Decodability certification for linear codes over labeled graphs.

An edge decodes its source exactly when the source's selector block lies
in the row space of the two endpoint generators stacked together; for a
linear code over independent uniform sources this rank criterion coincides
with zero conditional entropy. A brute-force oracle that enumerates every
source vector provides ground truth on tiny instances.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .construct import LinearCode
from .fields import FpMatrix, mat_rank, rowspace_contains, solve_row_combination, stack
from .graphs import Edge, StorageGraph

DEFAULT_ORACLE_CAP = 2**20


class CodeMismatchError(ValueError):
    """Code and graph disagree on node set, source count, or shapes."""


class OracleInfeasibleError(ValueError):
    """The exhaustive oracle would enumerate more vectors than allowed."""


@dataclass(frozen=True)
class EdgeCheck:
    edge: Edge
    decodable: bool
    pair_rank: int
    interference_dim: int

    def to_dict(self) -> dict:
        return {
            "u": self.edge.u,
            "v": self.edge.v,
            "w": self.edge.w,
            "decodable": self.decodable,
            "pair_rank": self.pair_rank,
            "interference_dim": self.interference_dim,
        }


@dataclass(frozen=True)
class VerificationReport:
    all_pass: bool
    checks: tuple[EdgeCheck, ...]

    @property
    def failing_edges(self) -> tuple[Edge, ...]:
        return tuple(c.edge for c in self.checks if not c.decodable)

    def to_dict(self) -> dict:
        return {
            "pass": self.all_pass,
            "edges": [c.to_dict() for c in self.checks],
        }


def check_compatible(code: LinearCode, g: StorageGraph) -> None:
    if code.k_sources != g.k_sources:
        raise CodeMismatchError(
            f"code has K={code.k_sources}, graph has K={g.k_sources}"
        )
    code_nodes = set(code.generators)
    graph_nodes = set(g.nodes)
    if code_nodes != graph_nodes:
        missing = sorted(graph_nodes - code_nodes)
        extra = sorted(code_nodes - graph_nodes)
        raise CodeMismatchError(
            f"node sets differ (missing {missing}, unexpected {extra})"
        )
    width = code.k_sources * code.lw
    for name, m in code.generators.items():
        if m.rows != code.lv or m.cols != width or m.p != code.p:
            raise CodeMismatchError(
                f"generator for {name!r} must be {code.lv}x{width} over F_{code.p}"
            )


def source_selector(code: LinearCode, k: int) -> FpMatrix:
    """lw x (K*lw) block selector picking out source k's symbols."""
    width = code.k_sources * code.lw
    rows = []
    for i in range(code.lw):
        row = [0] * width
        row[(k - 1) * code.lw + i] = 1
        rows.append(row)
    return FpMatrix.from_rows(rows, code.p)


def _stacked(code: LinearCode, e: Edge) -> FpMatrix:
    return stack(code.generators[e.u], code.generators[e.v])


def verify_edge(code: LinearCode, g: StorageGraph, e: Edge) -> bool:
    """Rank criterion for one edge: the desired selector lies in the row
    space of the stacked endpoint generators."""
    check_compatible(code, g)
    return rowspace_contains(_stacked(code, e), source_selector(code, e.w))


def interference_dimension(code: LinearCode, g: StorageGraph, e: Edge) -> int:
    """Rank of the stacked generators restricted to undesired source columns."""
    check_compatible(code, g)
    other_cols = [
        c
        for k in range(1, code.k_sources + 1)
        if k != e.w
        for c in code.source_columns(k)
    ]
    return mat_rank(_stacked(code, e).column_block(other_cols))


def _check_edge(code: LinearCode, e: Edge) -> EdgeCheck:
    stacked = _stacked(code, e)
    selector = source_selector(code, e.w)
    decodable = rowspace_contains(stacked, selector)
    other_cols = [
        c
        for k in range(1, code.k_sources + 1)
        if k != e.w
        for c in code.source_columns(k)
    ]
    return EdgeCheck(
        edge=e,
        decodable=decodable,
        pair_rank=mat_rank(stacked),
        interference_dim=mat_rank(stacked.column_block(other_cols)),
    )


def verify_code(code: LinearCode, g: StorageGraph, jobs: int = 1) -> VerificationReport:
    """Run the rank criterion on every edge, in normalized edge order.

    ``jobs`` > 1 checks edges concurrently; aggregation order is unchanged.
    """
    check_compatible(code, g)
    if jobs > 1 and len(g.edges) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            checks = tuple(pool.map(lambda e: _check_edge(code, e), g.edges))
    else:
        checks = tuple(_check_edge(code, e) for e in g.edges)
    return VerificationReport(
        all_pass=all(c.decodable for c in checks), checks=checks
    )


def decoder_for_edge(code: LinearCode, g: StorageGraph, e: Edge) -> FpMatrix:
    """Explicit lw x (2*lv) matrix recovering the edge's source from the two
    stored vectors; raises FieldError when the edge does not decode."""
    check_compatible(code, g)
    return solve_row_combination(_stacked(code, e), source_selector(code, e.w))


def oracle_exhaustive_decode(
    code: LinearCode, g: StorageGraph, e: Edge, cap: int = DEFAULT_ORACLE_CAP
) -> bool:
    """Ground-truth decodability: enumerate every source vector, group by the
    pair of stored values, and demand each group fixes the desired source.

    Only feasible when p**(K*lw) <= cap.
    """
    check_compatible(code, g)
    n = code.k_sources * code.lw
    total = code.p**n
    if total > cap:
        raise OracleInfeasibleError(
            f"would enumerate {total} source vectors, above the cap {cap}"
        )
    p = code.p
    vectors = np.indices((p,) * n, dtype=np.int64).reshape(n, -1).T
    gi = np.array(code.generators[e.u].entries, dtype=np.int64)
    gj = np.array(code.generators[e.v].entries, dtype=np.int64)
    stored = np.concatenate([vectors @ gi.T % p, vectors @ gj.T % p], axis=1)
    desired = vectors[:, (e.w - 1) * code.lw : e.w * code.lw]
    groups: dict[bytes, bytes] = {}
    for row_stored, row_desired in zip(stored, desired):
        key = row_stored.tobytes()
        value = row_desired.tobytes()
        seen = groups.get(key)
        if seen is None:
            groups[key] = value
        elif seen != value:
            return False
    return True
