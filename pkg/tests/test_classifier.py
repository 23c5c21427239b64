"""Verdict cascade: exact certificates, bounds, invariances, soundness."""

from __future__ import annotations

import random
from fractions import Fraction

from storagecode.classify import classify_capacity
from storagecode.graphs import StorageGraph
from storagecode.verify import verify_code

from conftest import ALL_FIXTURES, fixture_graph, permute_graph

EXPECTED = {
    "fig1": ("exact", Fraction(4, 3), "thm7"),
    "fig3a": ("exact", Fraction(2), "thm1"),
    "fig3b": ("exact", Fraction(3, 2), "thm1"),
    "fig3c": ("exact", Fraction(4, 3), "thm2"),
    "fig5a": ("exact", Fraction(4, 3), "thm2"),
    "fig5b": ("exact", Fraction(4, 3), "thm2"),
    "fig6": ("bounds", None, "thm3"),
    "fig7": ("exact", Fraction(4, 3), "thm4"),
    "fig8": ("bounds", None, "thm5"),
    "fig9": ("exact", Fraction(4, 3), "thm7"),
    "fig10": ("bounds", None, "thm6"),
}


def test_fixture_verdicts():
    for name, (kind, capacity, rule) in EXPECTED.items():
        verdict = classify_capacity(fixture_graph(name), seed=3)
        assert verdict.kind == kind, name
        assert verdict.capacity == capacity, name
        assert rule in verdict.rules, name


def test_exactness_soundness():
    """Every exact verdict ships a verified code of exactly that rate."""
    for name in ALL_FIXTURES:
        g = fixture_graph(name)
        verdict = classify_capacity(g, seed=3)
        assert verdict.code is not None
        assert verify_code(verdict.code, g).all_pass
        if verdict.kind == "exact":
            assert verdict.code.rate == verdict.capacity
            assert verdict.capacity in (Fraction(2), Fraction(3, 2), Fraction(4, 3))
        else:
            assert verdict.code.rate == verdict.lower


def test_bounds_details():
    fig6 = classify_capacity(fixture_graph("fig6"), seed=3)
    assert (fig6.lower, fig6.upper, fig6.strict_upper) == (
        Fraction(1, 2),
        Fraction(4, 3),
        True,
    )
    assert fig6.witnesses["thm3"]["path"]["nodes"] == ["V1", "V3", "V4", "V2"]
    assert fig6.witnesses["thm3"]["specials"] == ["V3"]

    fig8 = classify_capacity(fixture_graph("fig8"), seed=3)
    assert (fig8.lower, fig8.upper, fig8.strict_upper) == (
        Fraction(1, 2),
        Fraction(4, 3),
        True,
    )

    fig10 = classify_capacity(fixture_graph("fig10"), seed=3)
    assert (fig10.lower, fig10.upper, fig10.strict_upper) == (
        Fraction(1, 2),
        Fraction(5, 4),
        True,
    )
    kinds = [w["kind"] for w in fig10.witnesses["thm6"]]
    assert kinds == ["c"]


def test_lower_never_exceeds_upper():
    for name in ALL_FIXTURES:
        verdict = classify_capacity(fixture_graph(name), seed=3)
        assert verdict.lower <= verdict.upper


def test_unknown_case():
    # Extend the 13-node obstruction so it no longer matches thm5, while
    # keeping two internal edges and two specials per residing path.
    base = fixture_graph("fig8")
    nodes = list(base.nodes) + ["V14"]
    edges = [(e.u, e.v, e.w) for e in base.edges] + [("V11", "V14", 1)]
    g = StorageGraph.build(2, nodes, edges)
    verdict = classify_capacity(g, seed=3)
    assert verdict.kind == "unknown"
    assert verdict.lower == Fraction(1, 2)
    assert verdict.upper == Fraction(4, 3)
    assert verdict.code is not None and verify_code(verdict.code, g).all_pass


def test_overflow_becomes_unknown_with_reason():
    verdict = classify_capacity(fixture_graph("fig7"), seed=3, path_limit=2)
    assert verdict.kind == "unknown"
    assert verdict.reason is not None and "overflow" in verdict.reason
    assert verdict.code is not None


def test_verdict_invariant_under_relabeling():
    rng = random.Random(99)
    for name in ALL_FIXTURES:
        g = fixture_graph(name)
        base = classify_capacity(g, seed=3)
        for trial in range(2):
            h, _, _ = permute_graph(g, rng)
            other = classify_capacity(h, seed=3)
            assert (
                other.kind,
                other.capacity,
                other.lower,
                other.upper,
                other.strict_upper,
                tuple(sorted(other.rules)),
            ) == (
                base.kind,
                base.capacity,
                base.lower,
                base.upper,
                base.strict_upper,
                tuple(sorted(base.rules)),
            ), name


def test_adding_edge_between_two_color_nodes_never_raises_upper():
    rng = random.Random(5)
    for name in ["fig3b", "fig5a", "fig7", "fig9"]:
        g = fixture_graph(name)
        before = classify_capacity(g, seed=3)
        two_color = [v for v in g.nodes if len(g.node_sources(v)) == 2]
        candidates = [
            (a, b)
            for i, a in enumerate(two_color)
            for b in two_color[i + 1 :]
            if g.edge_between(a, b) is None
        ]
        rng.shuffle(candidates)
        for a, b in candidates[:3]:
            label = min(g.node_sources(a))
            extended = StorageGraph.build(
                g.k_sources,
                g.nodes,
                [(e.u, e.v, e.w) for e in g.edges] + [(a, b, label)],
            )
            after = classify_capacity(extended, seed=3)
            assert after.upper <= before.upper, (name, a, b)


def test_strict_thm4_flag_plumbs_through():
    g = fixture_graph("fig7")
    relaxed = classify_capacity(g, seed=3, strict_thm4=False)
    strict = classify_capacity(g, seed=3, strict_thm4=True)
    assert relaxed.kind == strict.kind == "exact"


def test_verdict_json_shape():
    verdict = classify_capacity(fixture_graph("fig6"), seed=3)
    payload = verdict.to_dict()
    assert payload["class"] == "bounds"
    assert payload["lower"] == "1/2"
    assert payload["upper"] == "4/3"
    assert payload["strict_upper"] is True
    assert payload["rules"] == ["thm3"]
    assert payload["code"]["lw"] == 1
    exact = classify_capacity(fixture_graph("fig3a"), seed=3).to_dict()
    assert exact["class"] == "exact"
    assert exact["capacity"] == "2"
