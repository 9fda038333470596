"""
Hamming Distance
Fraction of differing link weights between two graphs on the same vertices.
Undirected graphs normalize by N(N-1); directed graphs are measured on their
bipartite doubles, normalized by 2N(N-1).
"""

from dataclasses import dataclass
import numpy as np
import logging

from graphs.graph_model import Graph
from metrics.base_measure import GraphMeasure, check_compatible, register_measure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HammingResult:
    value: float
    normalizer: float


def hamming_normalizer(n: int, directed: bool) -> float:
    """eta-bar = N(N-1), or 2N(N-1) for directed graphs."""
    base = n * (n - 1)
    return float(2 * base if directed else base)


def hamming_distance(g1: Graph, g2: Graph) -> HammingResult:
    """
    Normalized Hamming distance.

    For directed graphs the bipartite double ((0, A^T), (A, 0)) holds every
    entry of A twice, so its mismatch count is twice the direct one; the sum
    is taken on A directly and doubled.
    """
    check_compatible(g1, g2)
    eta = hamming_normalizer(g1.n, g1.directed)
    if eta == 0:
        # a single vertex: both graphs are the empty 1-node graph
        return HammingResult(0.0, 0.0)

    # diagonals are zero, so the full sum equals the off-diagonal sum
    mismatch = float(np.abs(g1.weights - g2.weights).sum())
    if g1.directed:
        mismatch *= 2
    return HammingResult(mismatch / eta, eta)


@register_measure
class HammingMeasure(GraphMeasure):
    name = "h"

    def between(self, first: Graph, second: Graph) -> float:
        return hamming_distance(first, second).value
