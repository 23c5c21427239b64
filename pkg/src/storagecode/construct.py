"""Explicit linear code constructions for rates 2, 3/2 and 4/3.

Rates 2 and 3/2 are deterministic MDS assignments from Vandermonde rows.
The 4/3 constructions assign per-component pairs of random source
combinations so that, on every edge, undesired sources collapse to at most
two dimensions; decodability of each attempt is certified by the verifier
and failed draws are retried with fresh randomness (their failure
probability is below 4|E|/p by polynomial identity testing, so retries
terminate quickly in practice).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .fields import FpMatrix, random_matrix, smallest_prime_geq, vandermonde
from .graphs import Edge, GraphError, StorageGraph
from .rules import check_c2, check_c3_2, check_thm2, check_thm4, check_thm7
from .structure import (
    DEFAULT_PATH_LIMIT,
    classify_all,
    components_via_labels,
    internal_edges,
    residing_paths,
)

MAX_ATTEMPTS_PER_PRIME = 32
MAX_PRIME_ESCALATIONS = 6


class ConstructionError(ValueError):
    """Requested construction does not apply to this graph."""


class NoApplicableConstruction(ConstructionError):
    """No implemented construction covers the request; lists failed checks."""

    def __init__(self, message: str, failed_checks: list[str]):
        super().__init__(message)
        self.failed_checks = failed_checks


class ConstructionFailure(RuntimeError):
    """Verification kept failing after every retry and prime escalation."""


@dataclass(frozen=True)
class LinearCode:
    """One generator matrix per node, mapping the stacked source vector
    (lw symbols per source, K sources) to the node's lv stored symbols."""

    p: int
    k_sources: int
    lw: int
    lv: int
    generators: dict[str, FpMatrix]

    @property
    def rate(self) -> Fraction:
        return Fraction(self.lw, self.lv)

    def source_columns(self, k: int) -> range:
        return range((k - 1) * self.lw, k * self.lw)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "K": self.k_sources,
            "lw": self.lw,
            "lv": self.lv,
            "nodes": {name: m.to_lists() for name, m in self.generators.items()},
        }

    @staticmethod
    def from_dict(payload: dict) -> "LinearCode":
        required = {"p", "K", "lw", "lv", "nodes"}
        if not isinstance(payload, dict) or set(payload) != required:
            raise GraphError(
                "malformed", f"code document must have keys {sorted(required)}"
            )
        p, k, lw, lv = (int(payload[x]) for x in ("p", "K", "lw", "lv"))
        generators = {}
        for name, rows in payload["nodes"].items():
            m = FpMatrix.from_rows(rows, p)
            if m.rows != lv or m.cols != k * lw:
                raise GraphError(
                    "malformed",
                    f"generator for {name!r} must be {lv}x{k * lw}, got {m.rows}x{m.cols}",
                )
            generators[name] = m
        return LinearCode(p=p, k_sources=k, lw=lw, lv=lv, generators=generators)


# ---------------------------------------------------------------------------
# Deterministic MDS constructions (rates 2 and 3/2)
# ---------------------------------------------------------------------------


def _attached_nodes(g: StorageGraph, k: int) -> list[str]:
    return sorted(v for v in g.nodes if k in g.node_sources(v))


def _place_block(row: tuple[int, ...], k: int, lw: int, k_sources: int) -> list[int]:
    out = [0] * (k_sources * lw)
    out[(k - 1) * lw : k * lw] = list(row)
    return out


def construct_rate2(g: StorageGraph, seed: int = 0) -> LinearCode:
    """Rate-2 code: every node stores one MDS row of its own source.

    Deterministic; ``seed`` is accepted for interface symmetry but unused.
    """
    del seed
    if not check_c2(g):
        raise ConstructionError("rate-2 construction requires every node 1-color")
    groups = {k: _attached_nodes(g, k) for k in range(1, g.k_sources + 1)}
    p = smallest_prime_geq(max(2, max((len(v) for v in groups.values()), default=2)))
    generators: dict[str, list[list[int]]] = {}
    for k, members in groups.items():
        if not members:
            continue
        vand = vandermonde(len(members), 2, p)
        for i, node in enumerate(members):
            generators[node] = [_place_block(vand.row(i), k, 2, g.k_sources)]
    code = LinearCode(
        p=p,
        k_sources=g.k_sources,
        lw=2,
        lv=1,
        generators={n: FpMatrix.from_rows(generators[n], p) for n in g.nodes},
    )
    _certify(code, g)
    return code


def construct_rate3_2(g: StorageGraph, seed: int = 0) -> LinearCode:
    """Rate-3/2 code: 1-color nodes take two MDS rows, 2-color nodes one row
    per incident source. Deterministic; ``seed`` unused."""
    del seed
    if not check_c3_2(g):
        raise ConstructionError(
            "rate-3/2 construction requires 1-/2-color nodes with no adjacent "
            "2-color pair and at least one 2-color node"
        )
    colors = {v: len(g.node_sources(v)) for v in g.nodes}
    rows_needed = {}
    for k in range(1, g.k_sources + 1):
        members = _attached_nodes(g, k)
        rows_needed[k] = sum(2 if colors[v] == 1 else 1 for v in members)
    p = smallest_prime_geq(max(2, max(rows_needed.values(), default=2)))
    per_node_rows: dict[str, list[list[int]]] = {v: [] for v in g.nodes}
    for k in range(1, g.k_sources + 1):
        members = _attached_nodes(g, k)
        if not members:
            continue
        vand = vandermonde(rows_needed[k], 3, p)
        idx = 0
        for node in members:
            take = 2 if colors[node] == 1 else 1
            for _ in range(take):
                per_node_rows[node].append(
                    _place_block(vand.row(idx), k, 3, g.k_sources)
                )
                idx += 1
    code = LinearCode(
        p=p,
        k_sources=g.k_sources,
        lw=3,
        lv=2,
        generators={n: FpMatrix.from_rows(per_node_rows[n], p) for n in g.nodes},
    )
    _certify(code, g)
    return code


def construct_replication(g: StorageGraph) -> LinearCode:
    """Always-valid fallback: each node stores a full copy of every incident
    source; rate 1/M where M is the largest color count."""
    m_max = max(len(g.node_sources(v)) for v in g.nodes)
    p = 2
    generators = {}
    for v in g.nodes:
        rows = []
        for k in sorted(g.node_sources(v)):
            rows.append(_place_block((1,), k, 1, g.k_sources))
        while len(rows) < m_max:
            rows.append([0] * g.k_sources)
        generators[v] = FpMatrix.from_rows(rows, p)
    code = LinearCode(p=p, k_sources=g.k_sources, lw=1, lv=m_max, generators=generators)
    _certify(code, g)
    return code


# ---------------------------------------------------------------------------
# Aligned randomized construction (rate 4/3)
# ---------------------------------------------------------------------------

# Symbol (k, i) with i >= 1 is the i-th random combination of source k;
# (k, -j) with j in {1, 2} is one of the two extra combinations introduced
# by the single-internal-edge update.
Sym = tuple[int, int]
Row = dict[Sym, int]


@dataclass
class NodeAssignment:
    """Symbolic content of one node before field elements are sampled."""

    node: str
    per_source: dict[int, list[Row]] = field(default_factory=dict)
    merge: bool = False  # normal 2-color nodes fold 4 rows into 3


@dataclass(frozen=True)
class ComponentAssignment:
    """Per-source component decomposition driving the symbol layout.

    ``one_color`` components take three dedicated symbols each,
    ``two_color`` components share one symbol pair, ``three_color``
    components take a single symbol.
    """

    source: int
    one_color: tuple[tuple[str, ...], ...]
    two_color: tuple[tuple[str, ...], ...]
    three_color: tuple[tuple[str, ...], ...]

    @property
    def symbol_count(self) -> int:
        return (
            3 * len(self.one_color)
            + 2 * len(self.two_color)
            + len(self.three_color)
        )

    def pair_base(self, block_index: int) -> int:
        """First symbol index of the pair assigned to 2-color block m (1-based)."""
        return 3 * len(self.one_color) + 2 * block_index - 1

    def three_color_symbol(self, block_index: int) -> int:
        return 3 * len(self.one_color) + 2 * len(self.two_color) + block_index


def _aligned_assignments(
    g: StorageGraph,
) -> tuple[dict[str, NodeAssignment], dict[int, ComponentAssignment]]:
    classes = classify_all(g)
    assignments = {v: NodeAssignment(node=v) for v in g.nodes}
    for v in g.nodes:
        assignments[v].merge = classes[v].is_normal
    layouts: dict[int, ComponentAssignment] = {}
    for k in range(1, g.k_sources + 1):
        attached = _attached_nodes(g, k)
        other_labels = [x for x in range(1, g.k_sources + 1) if x != k]
        blocks = components_via_labels(g, attached, other_labels)
        ones, twos, threes = [], [], []
        for block in blocks:
            counts = {classes[v].color_count for v in block}
            if counts == {1}:
                ones.append(block)
            elif counts == {2}:
                twos.append(block)
            elif counts == {3}:
                threes.append(block)
            else:
                raise ConstructionError(
                    f"component {block} mixes color counts {sorted(counts)}; "
                    "aligned construction does not apply"
                )
        layout = ComponentAssignment(
            source=k,
            one_color=tuple(ones),
            two_color=tuple(twos),
            three_color=tuple(threes),
        )
        layouts[k] = layout
        for m, block in enumerate(layout.one_color, start=1):
            (node,) = block
            assignments[node].per_source[k] = [
                {(k, 3 * m - 2): 1},
                {(k, 3 * m - 1): 1},
                {(k, 3 * m): 1},
            ]
        for m, block in enumerate(layout.two_color, start=1):
            base = layout.pair_base(m)
            for j, node in enumerate(block, start=1):
                if k in classes[node].special_for:
                    assignments[node].per_source[k] = [
                        {(k, base): 1, (k, base + 1): 2 * j - 1}
                    ]
                else:
                    assignments[node].per_source[k] = [
                        {(k, base): 1, (k, base + 1): 2 * j - 1},
                        {(k, base): 1, (k, base + 1): 2 * j},
                    ]
        for m, block in enumerate(layout.three_color, start=1):
            (node,) = block
            assignments[node].per_source[k] = [
                {(k, layout.three_color_symbol(m)): 1}
            ]
    return assignments, layouts


def _add_rows(a: Row, b: Row) -> Row:
    out = dict(a)
    for sym, coeff in b.items():
        out[sym] = out.get(sym, 0) + coeff
    return out


def _final_symbolic_rows(assignment: NodeAssignment) -> list[Row]:
    sources = sorted(assignment.per_source)
    if assignment.merge:
        k1, k2 = sources
        r1, r2 = assignment.per_source[k1], assignment.per_source[k2]
        return [r1[0], r2[0], _add_rows(r1[1], r2[1])]
    rows: list[Row] = []
    for k in sources:
        rows.extend(assignment.per_source[k])
    return rows


def _materialize(
    g: StorageGraph,
    assignments: dict[str, NodeAssignment],
    layouts: dict[int, ComponentAssignment],
    p: int,
    rng: random.Random,
    xbar_sources: tuple[int, ...],
) -> LinearCode:
    lw, lv = 4, 3
    mixers = {
        k: random_matrix(layouts[k].symbol_count, lw, p, rng)
        for k in range(1, g.k_sources + 1)
    }
    extra = {k: random_matrix(2, lw, p, rng) for k in sorted(xbar_sources)}
    width = g.k_sources * lw
    generators = {}
    for v in g.nodes:
        rows = []
        for symbolic in _final_symbolic_rows(assignments[v]):
            vec = [0] * width
            for (k, idx), coeff in symbolic.items():
                src_row = (
                    mixers[k].row(idx - 1) if idx > 0 else extra[k].row(-idx - 1)
                )
                offset = (k - 1) * lw
                for c, x in enumerate(src_row):
                    vec[offset + c] = (vec[offset + c] + coeff * x) % p
            rows.append(vec)
        while len(rows) < lv:
            rows.append([0] * width)
        generators[v] = FpMatrix.from_rows(rows, p)
    return LinearCode(p=p, k_sources=g.k_sources, lw=lw, lv=lv, generators=generators)


def _randomized_build(
    g: StorageGraph,
    seed: int,
    make: Callable[[int, random.Random], LinearCode],
) -> tuple[LinearCode, int]:
    """Retry ``make`` with fresh deterministic randomness until the verifier
    accepts; escalate the field size when a prime is exhausted."""
    from .verify import verify_code

    base = random.Random(seed)
    p = smallest_prime_geq(4 * len(g.edges) + 1)
    attempts = 0
    for _ in range(MAX_PRIME_ESCALATIONS + 1):
        for _ in range(MAX_ATTEMPTS_PER_PRIME):
            rng = random.Random(base.getrandbits(64))
            attempts += 1
            code = make(p, rng)
            if verify_code(code, g).all_pass:
                return code, attempts
        p = smallest_prime_geq(2 * p + 1)
    raise ConstructionFailure(
        f"no verified code after {attempts} attempts up to p={p}; "
        "this indicates a bug in the assignment"
    )


def _certify(code: LinearCode, g: StorageGraph) -> None:
    from .verify import verify_code

    report = verify_code(code, g)
    if not report.all_pass:
        raise ConstructionFailure(
            "deterministic construction failed verification; this is a bug"
        )


def _build_aligned(g: StorageGraph, seed: int) -> tuple[LinearCode, int]:
    assignments, layouts = _aligned_assignments(g)

    def make(p: int, rng: random.Random) -> LinearCode:
        return _materialize(g, assignments, layouts, p, rng, ())

    return _randomized_build(g, seed, make)


def construct_thm2(g: StorageGraph, seed: int = 0) -> LinearCode:
    """Rate-4/3 code for two-source graphs with no internal edge after
    1-color nodes are dropped."""
    if not check_thm2(g):
        raise ConstructionError(
            "thm2 construction requires no internal edge after removing "
            "1-color nodes"
        )
    return _build_aligned(g, seed)[0]


def construct_thm7(g: StorageGraph, seed: int = 0) -> LinearCode:
    """Rate-4/3 code for any K: no thm6 structure and no internal edge after
    1-color nodes are dropped."""
    if not check_thm7(g):
        raise ConstructionError("thm7 construction preconditions not met")
    return _build_aligned(g, seed)[0]


@dataclass(frozen=True)
class SingleInternalUpdatePlan:
    """Where the extra combinations go when exactly one internal edge exists.

    ``near_u``/``near_v`` are the first special nodes reached from each
    endpoint along every all-2-color residing path; the closures are the
    nodes whose symbol pair is rewritten on each side (reachable along
    path-label edges without crossing a chosen special).
    """

    edge: Edge
    desired: int
    path_label: int
    near_u: tuple[str, ...]
    near_v: tuple[str, ...]
    closure_u: tuple[str, ...]
    closure_v: tuple[str, ...]


def plan_single_internal_update(
    g: StorageGraph, path_limit: int = DEFAULT_PATH_LIMIT
) -> SingleInternalUpdatePlan:
    internals = internal_edges(g)
    if len(internals) != 1:
        raise ConstructionError(
            f"expected exactly one internal edge, found {len(internals)}"
        )
    edge = internals[0][0]
    desired = edge.w
    path_label = 3 - desired if g.k_sources == 2 else None
    if path_label is None:
        raise ConstructionError("single-internal-edge update applies only to K=2")
    classes = classify_all(g)
    near_u: list[str] = []
    near_v: list[str] = []
    for path in residing_paths(g, edge, path_limit):
        if any(classes[v].color_count == 1 for v in path.nodes):
            continue
        first = next(
            (v for v in path.nodes[1:] if classes[v].is_special), None
        )
        last = next(
            (v for v in reversed(path.nodes[:-1]) if classes[v].is_special), None
        )
        if first is None or last is None or first == last:
            raise ConstructionError(
                "a residing path lacks two special nodes; update not applicable"
            )
        if first not in near_u:
            near_u.append(first)
        if last not in near_v:
            near_v.append(last)
    blocked = set(near_u) | set(near_v)
    if set(near_u) & set(near_v):
        raise ConstructionError("endpoint special sets overlap; update not applicable")

    def closure(start: str) -> tuple[str, ...]:
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nb in g.neighbors_via(node, path_label):
                if nb in seen or nb in blocked:
                    continue
                if classes[nb].color_count != 2:
                    continue
                seen.add(nb)
                frontier.append(nb)
        return tuple(sorted(seen))

    closure_u = closure(edge.u)
    closure_v = closure(edge.v)
    if set(closure_u) & set(closure_v):
        raise ConstructionError("rewrite regions overlap; update not applicable")
    return SingleInternalUpdatePlan(
        edge=edge,
        desired=desired,
        path_label=path_label,
        near_u=tuple(near_u),
        near_v=tuple(near_v),
        closure_u=closure_u,
        closure_v=closure_v,
    )


def _substitute(rows: list[Row], old: Sym, new: Sym) -> None:
    for row in rows:
        if old in row:
            row[new] = row.pop(old)


def _build_thm4(
    g: StorageGraph, seed: int, path_limit: int = DEFAULT_PATH_LIMIT
) -> tuple[LinearCode, int]:
    assignments, layouts = _aligned_assignments(g)
    plan = plan_single_internal_update(g, path_limit)
    k = plan.desired
    layout = layouts[k]
    block_index = next(
        (
            m
            for m, block in enumerate(layout.two_color, start=1)
            if plan.edge.u in block
        ),
        None,
    )
    if block_index is None or plan.edge.v not in layout.two_color[block_index - 1]:
        raise ConstructionError(
            "internal edge endpoints are not in a shared 2-color component"
        )
    base = layout.pair_base(block_index)
    for node in plan.closure_u:
        _substitute(assignments[node].per_source[k], (k, base + 1), (k, -1))
    for node in plan.closure_v:
        _substitute(assignments[node].per_source[k], (k, base), (k, -2))
    for node in plan.near_u:
        assignments[node].per_source[k] = [{(k, base): 1}]
    for node in plan.near_v:
        assignments[node].per_source[k] = [{(k, base + 1): 1}]

    def make(p: int, rng: random.Random) -> LinearCode:
        return _materialize(g, assignments, layouts, p, rng, (k,))

    return _randomized_build(g, seed, make)


def construct_thm4(g: StorageGraph, seed: int = 0) -> LinearCode:
    """Rate-4/3 code for two-source graphs with exactly one internal edge
    whose all-2-color residing paths each carry two special nodes."""
    if not check_thm4(g):
        raise ConstructionError("thm4 construction preconditions not met")
    return _build_thm4(g, seed)[0]


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutoResult:
    code: LinearCode
    rule: str
    attempts: int


def auto_construct(
    g: StorageGraph,
    rate: str = "auto",
    seed: int = 0,
    strict_thm4: bool = False,
    path_limit: int = DEFAULT_PATH_LIMIT,
) -> AutoResult:
    """Pick and run the first applicable construction for the requested rate.

    ``rate`` is one of "auto", "2", "3/2", "4/3". Raises
    NoApplicableConstruction (with the failed checks) when nothing applies.
    """
    failed: list[str] = []

    def try_rate2() -> AutoResult | None:
        if check_c2(g):
            return AutoResult(construct_rate2(g, seed), "thm1", 1)
        failed.append("c2: some node has more than one color")
        return None

    def try_rate3_2() -> AutoResult | None:
        if check_c3_2(g):
            return AutoResult(construct_rate3_2(g, seed), "thm1", 1)
        failed.append("c3_2: nodes beyond 2-color, or adjacent 2-color nodes")
        return None

    def try_4_3() -> AutoResult | None:
        if g.k_sources == 2:
            if check_thm2(g):
                code, attempts = _build_aligned(g, seed)
                return AutoResult(code, "thm2", attempts)
            failed.append("thm2: internal edge survives 1-color removal")
            if check_thm4(g, path_limit=path_limit, strict=strict_thm4):
                code, attempts = _build_thm4(g, seed, path_limit)
                return AutoResult(code, "thm4", attempts)
            failed.append(
                "thm4: not exactly one internal edge with two specials per path"
            )
        else:
            if check_thm7(g):
                code, attempts = _build_aligned(g, seed)
                return AutoResult(code, "thm7", attempts)
            failed.append("thm7: blocking structure or surviving internal edge")
        return None

    if rate == "2":
        result = try_rate2()
    elif rate == "3/2":
        result = try_rate3_2()
    elif rate == "4/3":
        result = try_4_3()
    elif rate == "auto":
        result = try_rate2() or try_rate3_2() or try_4_3()
    else:
        raise ValueError(f"unknown rate {rate!r}")
    if result is None:
        raise NoApplicableConstruction(
            "no implemented construction applies: " + "; ".join(failed), failed
        )
    return result
