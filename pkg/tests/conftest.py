"""
Shared fixtures: the two 8-node example networks, the 3-node directed
example and seeded random graphs.
"""

import os
import sys

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from graphs.graph_model import Graph, from_adjacency  # noqa: E402


def _rows(bits):
    return np.array([[int(c) for c in row] for row in bits], dtype=float)


I1_ROWS = ["01001001", "10000011", "00000110", "00001100",
           "10010000", "00110000", "01100001", "11000010"]
I2_ROWS = ["01000110", "10001100", "00000000", "00000011",
           "01000000", "11000000", "10010001", "00010010"]

I1_SPECTRUM = [0, 0.657077, 1, 2.529317, 3, 4, 4, 4.813607]
I2_SPECTRUM = [0, 0, 0.340321, 1.145088, 3, 3, 3.854912, 4.659679]

DIRECTED_EXAMPLE = [[0, 0, 1], [1, 0, 1], [1, 0, 0]]


@pytest.fixture
def i1() -> Graph:
    return from_adjacency(_rows(I1_ROWS))


@pytest.fixture
def i2() -> Graph:
    return from_adjacency(_rows(I2_ROWS))


@pytest.fixture
def directed_example() -> Graph:
    return from_adjacency(DIRECTED_EXAMPLE, directed=True)


def random_graph(n: int, rng: np.random.Generator, weighted: bool = False,
                 directed: bool = False, density: float = 0.5) -> Graph:
    """Random graph helper shared by the property tests."""
    mask = rng.random((n, n)) < density
    w = rng.random((n, n)) if weighted else np.ones((n, n))
    w = np.where(mask, w, 0.0)
    np.fill_diagonal(w, 0.0)
    if not directed:
        w = np.triu(w, k=1)
        w = w + w.T
    return Graph(w, directed)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)
