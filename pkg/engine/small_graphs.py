"""
Small Graph Enumeration
Every simple undirected unweighted graph on n <= 6 vertices, brute-force
isomorphism classes, and the complementary pairs that IM cannot separate.

Bitmask convention: the upper-triangle pairs (0,1), (0,2), ..., (n-2,n-1)
are read left to right as a binary number, so pair k carries weight
2^(E-1-k) with E = n(n-1)/2.
"""

from itertools import permutations
from typing import Dict, List, Tuple
import numpy as np
import logging

from graphs.graph_model import Graph, GraphCollection, upper_triangle_pairs
from metrics.spectral import graph_spectrum, im_from_spectra
from utils.errors import ContractError

logger = logging.getLogger(__name__)

MAX_VERTICES = 6
IM_ZERO_TOLERANCE = 1e-9


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise ContractError(f"exhaustive enumeration supports 1 <= n <= {MAX_VERTICES}, got {n}")


def _pair_weights(n: int) -> np.ndarray:
    slots = n * (n - 1) // 2
    return 2 ** np.arange(slots - 1, -1, -1, dtype=np.int64)


def mask_bits(n: int, masks: np.ndarray) -> np.ndarray:
    """(len(masks), E) 0/1 matrix of the pair indicators of each bitmask."""
    slots = n * (n - 1) // 2
    shifts = np.arange(slots - 1, -1, -1, dtype=np.int64)
    return ((np.asarray(masks, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.int8)


def graph_from_mask(n: int, mask: int) -> Graph:
    w = np.zeros((n, n))
    bits = mask_bits(n, np.array([mask]))[0]
    for k, (i, j) in enumerate(upper_triangle_pairs(n)):
        if bits[k]:
            w[i, j] = w[j, i] = 1
    return Graph(w)


def enumerate_small(n: int) -> GraphCollection:
    """All 2^(n(n-1)/2) graphs on n vertices, ordered by bitmask, labelled by zero-padded mask."""
    _check_n(n)
    count = 2 ** (n * (n - 1) // 2)
    width = len(str(count - 1))
    graphs = tuple(graph_from_mask(n, m) for m in range(count))
    labels = tuple(f"g{m:0{width}d}" for m in range(count))
    logger.info(f"Enumerated {count} graphs on {n} vertices")
    return GraphCollection(graphs, labels)


def canonical_codes(collection: GraphCollection) -> np.ndarray:
    """
    Canonical form of each graph: the smallest bitmask over all n! vertex
    relabellings. Two graphs are isomorphic iff their codes are equal.
    """
    n = collection.n
    _check_n(n)
    if collection.directed or not all(g.is_unweighted for g in collection):
        raise ContractError("isomorphism classes need undirected unweighted graphs")

    pairs = upper_triangle_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    rows, cols = np.triu_indices(n, k=1)
    bits = np.stack([g.weights[rows, cols] for g in collection]).astype(np.int64)
    weights = _pair_weights(n)

    best = bits @ weights
    for sigma in permutations(range(n)):
        # slot (a, b) of the relabelled graph reads slot (sigma[a], sigma[b]) of the original
        source = [index[tuple(sorted((sigma[a], sigma[b])))] for a, b in pairs]
        np.minimum(best, bits[:, source] @ weights, out=best)
    return best


def isomorphism_classes(collection: GraphCollection) -> List[List[int]]:
    """Partition of graph indices into isomorphism classes, ordered by canonical code."""
    codes = canonical_codes(collection)
    classes: Dict[int, List[int]] = {}
    for k, code in enumerate(codes.tolist()):
        classes.setdefault(code, []).append(k)
    return [classes[c] for c in sorted(classes)]


def find_h1_im0_pairs(n: int, tolerance: float = IM_ZERO_TOLERANCE) -> List[Tuple[int, int]]:
    """
    Unordered pairs (i, j), i < j, of enumerated graphs with H = 1 and IM < tolerance.
    H = 1 forces j to be the complement of i, so only complementary pairs are scanned.
    """
    _check_n(n)
    if n < 2:
        return []
    collection = enumerate_small(n)
    full = len(collection) - 1
    spectra = [graph_spectrum(g) for g in collection]
    found = []
    for i in range(len(collection)):
        j = full ^ i
        if i < j and im_from_spectra(spectra[i], spectra[j]) < tolerance:
            found.append((i, j))
    logger.info(f"{len(found)} complementary pairs on {n} vertices with IM below {tolerance}")
    return found
