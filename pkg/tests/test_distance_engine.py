"""
Tests for pairwise distance matrices over graph collections.
"""

import numpy as np
import pytest

from conftest import random_graph
from engine.distance_engine import DistanceEngine, distance_matrix
from engine.small_graphs import enumerate_small
from graphs.graph_model import GraphCollection, complete_graph, empty_graph
from metrics.hamming import hamming_distance
from metrics.him_metric import him_distance
from metrics.spectral import im_distance
from utils.errors import ContractError


def test_extreme_pair():
    collection = GraphCollection((empty_graph(4), complete_graph(4)))
    for measure in ("h", "im", "him"):
        m = distance_matrix(collection, measure)
        assert np.allclose(m.values, [[0, 1], [1, 0]], atol=1e-9)
        assert m.measure == measure


def test_entries_match_pair_functions(rng):
    graphs = tuple(random_graph(8, rng, weighted=True) for _ in range(5))
    collection = GraphCollection(graphs)
    h = distance_matrix(collection, "h")
    im = distance_matrix(collection, "IM")
    him = distance_matrix(collection, "him", xi=2.5)
    for i in range(5):
        for j in range(5):
            if i != j:
                assert h.values[i, j] == hamming_distance(graphs[i], graphs[j]).value
                assert im.values[i, j] == pytest.approx(im_distance(graphs[i], graphs[j]), abs=1e-14)
                assert him.values[i, j] == pytest.approx(him_distance(graphs[i], graphs[j], 2.5).him, abs=1e-14)
    assert him.xi == 2.5


def test_serial_equals_parallel(rng):
    collection = GraphCollection(tuple(random_graph(10, rng) for _ in range(9)))
    serial = distance_matrix(collection, "him", threads=1)
    parallel = distance_matrix(collection, "him", threads=4)
    assert np.array_equal(serial.values, parallel.values)


def test_pair_count_on_all_four_vertex_graphs():
    m = distance_matrix(enumerate_small(4), "h", threads=2)
    assert m.pair_values().size == 2016
    assert m.labels[5] == "g05"


def test_progress_callback(rng):
    seen = []
    engine = DistanceEngine(threads=2, progress_callback=lambda msg, pct: seen.append(pct))
    engine.distance_matrix(GraphCollection(tuple(random_graph(6, rng) for _ in range(4))))
    assert seen and seen[-1] == 100
    assert all(0 <= p <= 100 for p in seen)


def test_invalid_requests(i1):
    with pytest.raises(ContractError):
        distance_matrix(GraphCollection((i1,)))
    with pytest.raises(ContractError):
        distance_matrix(GraphCollection((i1, i1)), "edit")
    with pytest.raises(ContractError):
        DistanceEngine(threads=0)
