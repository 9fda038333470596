"""
Tests for the normalized Hamming distance.
"""

import numpy as np
import pytest

from conftest import random_graph
from graphs.graph_model import complete_graph, directed_to_bipartite, empty_graph
from metrics.hamming import hamming_distance, hamming_normalizer
from utils.errors import ContractError


def test_example_pair(i1, i2):
    result = hamming_distance(i1, i2)
    assert result.value == 0.5
    assert result.normalizer == 56


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_extremes_are_at_distance_one(n):
    assert hamming_distance(empty_graph(n), complete_graph(n)).value == 1.0
    assert hamming_distance(empty_graph(n, True), complete_graph(n, True)).value == 1.0


def test_identity_and_symmetry(rng):
    for _ in range(20):
        g = random_graph(9, rng, weighted=True)
        h = random_graph(9, rng, weighted=True)
        assert hamming_distance(g, g).value == 0.0
        assert hamming_distance(g, h).value == pytest.approx(hamming_distance(h, g).value, abs=1e-12)


def test_triangle_inequality(rng):
    for _ in range(200):
        n = int(rng.integers(5, 31))
        weighted = bool(rng.integers(2))
        a, b, c = (random_graph(n, rng, weighted) for _ in range(3))
        ab = hamming_distance(a, b).value
        bc = hamming_distance(b, c).value
        ac = hamming_distance(a, c).value
        assert ac <= ab + bc + 1e-12
        assert 0.0 <= ab <= 1.0


def test_unweighted_value_counts_mismatched_edges(rng):
    n = 10
    g = random_graph(n, rng)
    h = random_graph(n, rng)
    mismatched = int(np.sum(np.triu(g.weights != h.weights, k=1)))
    assert hamming_distance(g, h).value == pytest.approx(mismatched * 2 / (n * (n - 1)), abs=1e-15)


def test_directed_example_against_empty(directed_example):
    result = hamming_distance(directed_example, empty_graph(3, directed=True))
    assert result.normalizer == 12
    assert result.value == pytest.approx(8 / 12, abs=1e-15)


def test_directed_matches_bipartite_double_count(rng):
    for _ in range(10):
        g = random_graph(6, rng, weighted=True, directed=True)
        h = random_graph(6, rng, weighted=True, directed=True)
        doubled = np.abs(directed_to_bipartite(g).weights - directed_to_bipartite(h).weights).sum()
        expected = doubled / hamming_normalizer(6, directed=True)
        assert hamming_distance(g, h).value == pytest.approx(expected, abs=1e-12)


def test_single_vertex():
    result = hamming_distance(empty_graph(1), empty_graph(1))
    assert result.value == 0.0


def test_mismatch_rejected(i1):
    with pytest.raises(ContractError):
        hamming_distance(i1, empty_graph(7))
    with pytest.raises(ContractError):
        hamming_distance(empty_graph(3), empty_graph(3, directed=True))
