"""
Graph Model
Canonical graph representation on N positionally labelled vertices.
Weights lie in [0, 1], self-loops are forbidden and undirected graphs are
exactly symmetric. A directed link i -> j is stored at weights[j, i].
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import numpy as np
import networkx as nx
import logging

from utils.errors import InputError, ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable weighted graph; the universal input of every measure."""

    weights: np.ndarray
    directed: bool = False

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        _validate_weights(w, self.directed)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def is_unweighted(self) -> bool:
        return bool(np.all((self.weights == 0) | (self.weights == 1)))

    @property
    def edge_count(self) -> int:
        """Nonzero links: upper-triangle slots if undirected, all entries if directed."""
        if self.directed:
            return int(np.count_nonzero(self.weights))
        return int(np.count_nonzero(np.triu(self.weights, k=1)))

    def degrees(self) -> np.ndarray:
        """Weighted degrees (row sums)."""
        return self.weights.sum(axis=1)

    def equals(self, other: "Graph") -> bool:
        return self.directed == other.directed and np.array_equal(self.weights, other.weights)

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Relabel vertices: vertex perm[k] of the result is vertex k of self."""
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ContractError(f"not a permutation of 0..{self.n - 1}: {perm.tolist()}")
        inverse = np.argsort(perm)
        return Graph(self.weights[np.ix_(inverse, inverse)], self.directed)

    def to_networkx(self) -> nx.Graph:
        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(self.n))
        rows, cols = np.nonzero(self.weights)
        for r, c in zip(rows.tolist(), cols.tolist()):
            if self.directed:
                # weights[j, i] encodes i -> j
                g.add_edge(c, r, weight=float(self.weights[r, c]))
            elif r < c:
                g.add_edge(r, c, weight=float(self.weights[r, c]))
        return g

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, {kind}, links={self.edge_count})"


def _validate_weights(w: np.ndarray, directed: bool) -> None:
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InputError(f"adjacency matrix must be square, got shape {w.shape}")
    if w.shape[0] == 0:
        raise InputError("adjacency matrix is empty")
    if not np.all(np.isfinite(w)):
        raise InputError("adjacency matrix contains non-finite values")
    if w.min() < 0 or w.max() > 1:
        raise InputError(f"weights must lie in [0, 1], found range [{w.min()}, {w.max()}]")
    if np.any(np.diagonal(w) != 0):
        raise InputError("self-loops are not allowed: diagonal must be exactly 0")
    if not directed and not np.array_equal(w, w.T):
        raise InputError("undirected adjacency matrix is not symmetric")


@dataclass(frozen=True)
class GraphCollection:
    """Nonempty ordered list of graphs sharing vertex count and directedness."""

    graphs: Tuple[Graph, ...]
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        graphs = tuple(self.graphs)
        if not graphs:
            raise InputError("graph collection is empty")
        n, directed = graphs[0].n, graphs[0].directed
        for k, g in enumerate(graphs):
            if g.n != n:
                raise ContractError(f"graph #{k} has {g.n} vertices, expected {n}")
            if g.directed != directed:
                raise ContractError(f"graph #{k} directedness differs from graph #0")
        labels = tuple(self.labels) if self.labels else tuple(f"g{k}" for k in range(len(graphs)))
        if len(labels) != len(graphs):
            raise ContractError(f"{len(labels)} labels for {len(graphs)} graphs")
        object.__setattr__(self, "graphs", graphs)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.graphs[0].n

    @property
    def directed(self) -> bool:
        return self.graphs[0].directed

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, index: int) -> Graph:
        return self.graphs[index]


def _check_size(n: int) -> None:
    if n < 1:
        raise ContractError(f"vertex count must be >= 1, got {n}")


def empty_graph(n: int, directed: bool = False) -> Graph:
    """E_N: no links."""
    _check_size(n)
    return Graph(np.zeros((n, n)), directed)


def complete_graph(n: int, directed: bool = False) -> Graph:
    """F_N (or the full directed graph): weight matrix 1_N - I_N."""
    _check_size(n)
    return Graph(np.ones((n, n)) - np.eye(n), directed)


def path_graph(n: int) -> Graph:
    """Undirected path 0 - 1 - ... - (n-1)."""
    _check_size(n)
    w = np.zeros((n, n))
    idx = np.arange(n - 1)
    w[idx, idx + 1] = 1
    w[idx + 1, idx] = 1
    return Graph(w)


def from_adjacency(matrix, directed: bool = False) -> Graph:
    """Validated Graph from any square array-like of weights."""
    try:
        w = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as e:
        raise InputError(f"adjacency matrix is not numeric: {e}")
    return Graph(w, directed)


def from_networkx(g: nx.Graph, n: Optional[int] = None) -> Graph:
    """Unweighted Graph from a networkx graph whose nodes are 0..n-1."""
    n = g.number_of_nodes() if n is None else n
    w = np.zeros((n, n))
    for u, v in g.edges():
        if u == v:
            continue
        if g.is_directed():
            w[v, u] = 1
        else:
            w[u, v] = w[v, u] = 1
    return Graph(w, g.is_directed())


def directed_to_bipartite(g: Graph) -> Graph:
    """
    Undirected bipartite double on 2n vertices, ordered x1_O..xn_O, x1_I..xn_I,
    with block matrix ((0, A^T), (A, 0)). Weights are carried unchanged.
    """
    if not g.directed:
        raise ContractError("directed_to_bipartite needs a directed graph")
    a = g.weights
    zero = np.zeros_like(a)
    return Graph(np.block([[zero, a.T], [a, zero]]), directed=False)


def upper_triangle_pairs(n: int) -> List[Tuple[int, int]]:
    """Vertex pairs (i, j), i < j, in row-major order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]
