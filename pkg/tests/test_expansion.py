from __future__ import annotations

import math
import random
from itertools import combinations

import pytest

from bipspec.bigraph import build, complete_bipartite, path_graph
from bipspec.expansion import (
    corollary_r5_gamma,
    lossless_parameters,
    ndc_expander_check,
    spectral_expansion,
    theorem_r4_report,
    vertex_expansion,
)
from bipspec.spectra import adjacency_matrix, laplacian_matrix, symmetric_eigenvalues
from bipspec.vsplit import vertex_split


def _alpha_reversed_order(g, side: str, cap: int) -> float:
    """Independent restart: same minimum, enumerated largest subsets first."""
    neighbors = g.left_neighbors() if side == "left" else g.right_neighbors()
    sets = [set(nb) for nb in neighbors]
    size_range = range(min(cap, len(sets)), 0, -1)
    return min(
        len(set().union(*(sets[v] for v in subset))) / size
        for size in size_range
        for subset in combinations(reversed(range(len(sets))), size)
    )


def test_split_k84_alpha():
    split = vertex_split(complete_bipartite(8, 4)).split_graph
    report = vertex_expansion(split, "left", 2)
    assert report.alpha == 2.5
    assert report.exhaustive
    # every pair of left vertices reaches at least 5 checks
    neighbors = [set(nb) for nb in split.left_neighbors()]
    assert min(len(neighbors[a] | neighbors[b]) for a, b in combinations(range(8), 2)) == 5


def test_complete_bipartite_alpha_two():
    for n in (4, 6):
        g = complete_bipartite(n, n)
        report = vertex_expansion(g, "left", n // 2)
        assert report.alpha == 2.0
        assert len(report.witness) == n // 2


def test_isolated_vertex_alpha_zero():
    g = build(3, 2, [(0, 0), (0, 1), (1, 0)])  # left vertex 2 is isolated
    report = vertex_expansion(g, "left", 2)
    assert report.alpha == 0.0
    assert report.witness == (2,)


def test_alpha_monotone_in_cap():
    rng = random.Random(5)
    for _ in range(10):
        n1, n2 = rng.randint(3, 7), rng.randint(3, 7)
        edges = [(u, v) for u in range(n1) for v in range(n2) if rng.random() < 0.6]
        if not edges:
            continue
        g = build(n1, n2, edges)
        alphas = [vertex_expansion(g, "left", cap).alpha for cap in range(1, n1 + 1)]
        assert all(a >= b for a, b in zip(alphas, alphas[1:]))


def test_alpha_order_invariance():
    split = vertex_split(complete_bipartite(8, 4)).split_graph
    for cap in (1, 2, 3):
        assert vertex_expansion(split, "left", cap).alpha == _alpha_reversed_order(split, "left", cap)


def test_left_regular_alpha_at_most_degree():
    rng = random.Random(9)
    for _ in range(8):
        n2 = rng.randint(4, 8)
        g = complete_bipartite(rng.randint(4, 8), n2)
        d = g.degree_profile().left_degrees[0]
        assert vertex_expansion(g, "left", 3).alpha <= d


def test_exhaustive_refusal_names_estimate():
    g = complete_bipartite(25, 3)
    with pytest.raises(ValueError, match="subsets"):
        vertex_expansion(g, "left", 3, require_exhaustive=True)


def test_sampled_mode_flagged():
    g = complete_bipartite(25, 3)
    report = vertex_expansion(g, "left", 3, samples=500)
    assert not report.exhaustive
    assert report.alpha >= 1.0  # complete bipartite: every subset reaches all of Y


def test_expansion_report_schema():
    d = vertex_expansion(complete_bipartite(3, 3), "left", 1).to_json_dict()
    assert set(d) == {"side", "cap", "alpha", "witness", "exhaustive"}


def test_gamma_derived_cap():
    split = vertex_split(complete_bipartite(8, 4)).split_graph
    by_gamma = vertex_expansion(split, "left", gamma=0.25)
    by_cap = vertex_expansion(split, "left", 2)
    assert by_gamma.subset_cap == 2
    assert by_gamma.alpha == by_cap.alpha
    with pytest.raises(ValueError, match="cap or a gamma"):
        vertex_expansion(split, "left")
    with pytest.raises(ValueError, match=">= 1"):
        vertex_expansion(split, "left", gamma=0.01)


def test_spectral_expansion_k55():
    g = complete_bipartite(5, 5)
    lam, normalized = spectral_expansion(symmetric_eigenvalues(adjacency_matrix(g)), 5)
    assert lam == pytest.approx(5.0, abs=1e-8)
    assert normalized == pytest.approx(1.0, abs=1e-8)


def test_spectral_expansion_p4_and_k11():
    lam, _ = spectral_expansion(symmetric_eigenvalues(adjacency_matrix(path_graph(4))), 2)
    assert lam == pytest.approx(1.6180339887498949, abs=1e-8)
    lam, normalized = spectral_expansion(symmetric_eigenvalues(adjacency_matrix(complete_bipartite(1, 1))), 1)
    assert (lam, normalized) == (1.0, 1.0)


def test_spectral_expansion_equals_lambda1_on_connected_bipartite():
    # bipartite spectra are symmetric, so max(|l2|, |ln|) = |ln| = l1
    for g in (path_graph(7), complete_bipartite(4, 6), vertex_split(complete_bipartite(8, 4)).split_graph):
        spec = symmetric_eigenvalues(adjacency_matrix(g))
        lam, _ = spectral_expansion(spec, 1)
        assert lam == pytest.approx(spec.eigenvalues[0], abs=1e-8)


def test_spectral_expansion_contract():
    lap = symmetric_eigenvalues(laplacian_matrix(path_graph(4)))
    with pytest.raises(ValueError, match="adjacency"):
        spectral_expansion(lap, 2)
    adj = symmetric_eigenvalues(adjacency_matrix(path_graph(4)))
    with pytest.raises(ValueError, match="degree"):
        spectral_expansion(adj, 0)


def test_ndc_check_cases():
    ok, witness = ndc_expander_check(complete_bipartite(4, 4), 0.0)
    assert ok and witness is None

    ok, witness = ndc_expander_check(complete_bipartite(2, 2), 1.0)
    assert ok

    ok, witness = ndc_expander_check(path_graph(4), 1.0)
    assert not ok
    assert witness == (0,)

    with pytest.raises(ValueError, match="equal sides"):
        ndc_expander_check(complete_bipartite(3, 2), 1.0)


def test_lossless_split_k84():
    split = vertex_split(complete_bipartite(8, 4)).split_graph
    params = lossless_parameters(split, 1 / 4)
    assert params.D == 4
    assert params.alpha == 2.5
    assert params.epsilon == 0.375
    assert params.epsilon == (8 - 2) / (2 * 8)
    assert params.epsilon < 0.5
    assert params.alpha == pytest.approx(params.D * (1 - params.epsilon), abs=1e-12)


def test_lossless_singleton_cap_gives_epsilon_zero():
    g = complete_bipartite(6, 4)
    params = lossless_parameters(g, 1 / 6)  # floor(6/6) = 1
    assert params.alpha == params.D == 4
    assert params.epsilon == 0.0


def test_lossless_contract_errors():
    tree = build(3, 2, [(0, 0), (1, 0), (2, 1), (0, 1)])  # left degrees 2,1,1
    with pytest.raises(ValueError, match="left-regular"):
        lossless_parameters(tree, 0.5)
    with pytest.raises(ValueError, match=">= 1"):
        lossless_parameters(complete_bipartite(4, 4), 0.1)


def _brute_alpha_at_size(g, size: int) -> float:
    neighbors = [set(nb) for nb in g.left_neighbors()]
    return min(
        len(set().union(*(neighbors[v] for v in subset))) / size
        for subset in combinations(range(g.n1), size)
    )


def test_theorem_r4_cases():
    rep = theorem_r4_report(6, 6)
    assert rep.case == 1
    assert rep.formula_alpha == pytest.approx(1 + 2 / 6, abs=1e-12)
    split = vertex_split(complete_bipartite(6, 6)).split_graph
    assert rep.measured_alpha == _brute_alpha_at_size(split, 3)

    rep = theorem_r4_report(12, 6)
    assert rep.case == 2
    assert rep.formula_alpha == 1.0

    rep = theorem_r4_report(8, 6)
    assert rep.case == 3
    assert rep.formula_alpha == pytest.approx(1 + ((8 - 3) - 3) / 6, abs=1e-12)
    split = vertex_split(complete_bipartite(8, 6)).split_graph
    assert rep.measured_alpha == _brute_alpha_at_size(split, 3)


def test_theorem_r4_contract():
    with pytest.raises(ValueError, match="even"):
        theorem_r4_report(7, 5)
    with pytest.raises(ValueError, match="n <= m <= 2n"):
        theorem_r4_report(20, 6)


def test_corollary_r5_gamma_values():
    assert corollary_r5_gamma(4, 4) == 1 / 64
    assert corollary_r5_gamma(1, 1) == 1.0
    assert corollary_r5_gamma(10, 5) == pytest.approx(0.002, abs=1e-15)
    with pytest.raises(ValueError):
        corollary_r5_gamma(0, 3)
