from __future__ import annotations

import cmath
import math
import random

import pytest

from bipspec.bigraph import build, complete_bipartite, edge_connectivity, random_tree
from bipspec.vsplit import (
    SPLIT_RULES,
    split_sidecar,
    theorem_r1_check,
    theorem_r2_check,
    vertex_split,
)


def _random_min_degree(rng: random.Random, delta: int):
    while True:
        n1 = rng.randint(delta + 1, delta + 5)
        n2 = rng.randint(delta + 1, delta + 5)
        edges = [(u, v) for u in range(n1) for v in range(n2) if rng.random() < 0.75]
        g = build(n1, n2, edges)
        if g.degree_profile().delta >= delta:
            return g


def test_split_k84_canonical_example():
    result = vertex_split(complete_bipartite(8, 4))
    split = result.split_graph
    assert (split.n1, split.n2) == (8, 8)
    assert split.m == 32
    for sm in result.mapping:
        assert len(sm.a_neighbors) == 4
        assert len(sm.b_neighbors) == 4
    assert result.warnings == ()


def test_split_k55_odd_degrees_and_warning():
    result = vertex_split(complete_bipartite(5, 5))
    for sm in result.mapping:
        assert (len(sm.a_neighbors), len(sm.b_neighbors)) == (3, 2)
    assert any("n1 > n2" in w for w in result.warnings)


def test_split_preserves_edge_count():
    rng = random.Random(1)
    for _ in range(10):
        g = _random_min_degree(rng, 1)
        for rule in SPLIT_RULES:
            assert vertex_split(g, rule, 5).split_graph.m == g.m


def test_split_invariants_on_min_degree_4_graphs():
    rng = random.Random(2)
    for _ in range(30):
        g = _random_min_degree(rng, 4)
        result = vertex_split(g, "round-robin", 0)
        split = result.split_graph
        assert split.m == g.m
        assert split.degree_profile().left_degrees == g.degree_profile().left_degrees
        right = g.degree_profile().right_degrees
        for j, sm in enumerate(result.mapping):
            da, db = len(sm.a_neighbors), len(sm.b_neighbors)
            assert da + db == right[j]
            assert abs(da - db) == right[j] % 2
            assert da >= db  # y_a takes the larger half
        n_a = {x for sm in result.mapping for x in sm.a_neighbors}
        n_b = {x for sm in result.mapping for x in sm.b_neighbors}
        assert n_a & n_b


def test_split_mapping_index_layout():
    g = complete_bipartite(6, 3)
    result = vertex_split(g)
    for j, sm in enumerate(result.mapping):
        assert sm.a_index == j
        assert sm.b_index == g.n2 + j


def test_split_deterministic_all_rules():
    g = _random_min_degree(random.Random(7), 2)
    for rule in SPLIT_RULES:
        r1 = vertex_split(g, rule, 13)
        r2 = vertex_split(g, rule, 13)
        assert r1.split_graph.edges == r2.split_graph.edges
        assert split_sidecar(r1) == split_sidecar(r2)


def test_round_robin_connects_where_contiguous_does_not():
    g = complete_bipartite(8, 4)
    assert vertex_split(g, "round-robin", 0).split_graph.is_connected()
    assert not vertex_split(g, "contiguous", 0).split_graph.is_connected()


def test_round_robin_connected_on_acceptance_family():
    for m, n in [(8, 4), (5, 5), (6, 6), (8, 6), (12, 6), (16, 8)]:
        split = vertex_split(complete_bipartite(m, n)).split_graph
        assert split.is_connected(), (m, n)


def test_split_rejects_empty_and_bad_rule():
    from bipspec.bigraph import BipartiteGraph

    with pytest.raises(ValueError, match="empty"):
        vertex_split(BipartiteGraph(2, 2, frozenset()))
    with pytest.raises(ValueError, match="rule"):
        vertex_split(complete_bipartite(2, 2), "furthest-first")


def test_split_warnings_small_graph():
    result = vertex_split(complete_bipartite(2, 2))
    joined = " ".join(result.warnings)
    assert "minimum degree" in joined
    assert "n1 >= 4" in joined
    assert "n2 >= 3" in joined


def test_sidecar_schema():
    side = split_sidecar(vertex_split(complete_bipartite(5, 5)))
    assert set(side) == {"mapping", "rule", "warnings"}
    assert side["mapping"][0] == [0, 5]


def _circulant_lambda2() -> float:
    """Closed-form second singular value of the round-robin K_{5,5} split."""
    values = []
    for k in range(5):
        w = cmath.exp(2j * math.pi * k / 5)
        values.append(math.sqrt(abs(1 + w + w**2) ** 2 + abs(w**3 + w**4) ** 2))
    return sorted(values, reverse=True)[1]


def test_theorem_r1_k55():
    split = vertex_split(complete_bipartite(5, 5), "round-robin", 0)
    report = theorem_r1_check(split, k=2)
    assert report.threshold == pytest.approx((2 * 2 - 1) / math.sqrt(2), abs=1e-12)
    assert report.threshold == pytest.approx(2.12132, abs=1e-5)
    assert report.lambda2_prime == pytest.approx(_circulant_lambda2(), abs=1e-8)
    assert report.criterion_met
    assert report.measured_kappa == 2
    assert report.conclusion_holds
    assert report.preconditions_met


def test_theorem_r1_preconditions():
    split = vertex_split(complete_bipartite(8, 4))  # not regular
    report = theorem_r1_check(split, k=2)
    assert not report.preconditions_met
    assert "regular" in report.notes
    assert report.lambda2_prime > 0  # still evaluated observationally


def test_theorem_r2_thresholds():
    g = complete_bipartite(8, 4)
    split = vertex_split(g)
    report = theorem_r2_check(g, split, k=2)
    assert report.threshold == pytest.approx(4 * 3 / math.sqrt(64), abs=1e-12)
    assert report.threshold == 1.5
    assert report.preconditions_met

    g55 = complete_bipartite(5, 5)
    r2 = theorem_r2_check(g55, vertex_split(g55), k=2)
    assert r2.threshold == pytest.approx((2 * 2 - 1) / math.sqrt(2), abs=1e-12)


def test_theorem_r2_non_biregular():
    tree = random_tree(9, "balanced", 4)
    split = vertex_split(tree)
    report = theorem_r2_check(tree, split, k=2)
    assert not report.preconditions_met
    assert "biregular" in report.notes
    assert report.measured_kappa == edge_connectivity(split.split_graph)


def test_criterion_report_schema():
    split = vertex_split(complete_bipartite(5, 5))
    d = theorem_r1_check(split, 2).to_json_dict()
    assert set(d) == {
        "theorem",
        "k",
        "threshold",
        "lambda2_prime",
        "criterion_met",
        "measured_kappa",
        "conclusion_holds",
        "preconditions_met",
        "notes",
    }
