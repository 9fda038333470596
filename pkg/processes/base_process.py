"""
Base Process Class
Abstract base class for edge-evolution processes.
A process edits one undirected link per step, starting from a given graph,
until no legal edit is left.
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Tuple, Type
import numpy as np
import logging

from graphs.graph_model import Graph, upper_triangle_pairs
from utils.errors import ContractError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class EdgeProcess(ABC):
    """
    Abstract base class for all processes.
    Subclasses add links (adds = True) or remove them, choosing one per step.
    """

    kind: str = "process"
    adds: bool = True

    def __init__(self, start: Graph, rng: np.random.Generator):
        if start.directed or not start.is_unweighted:
            raise ContractError(f"{self.kind} needs an undirected unweighted start graph")
        self.start = start
        self.rng = rng
        self.adjacency = np.array(start.weights)
        self.steps_taken = 0
        self._present = start.edge_count

    @property
    def n(self) -> int:
        return self.start.n

    def available(self) -> int:
        """Legal edits left: absent links for additions, present links for removals."""
        slots = self.n * (self.n - 1) // 2
        return slots - self._present if self.adds else self._present

    def _pairs_with_state(self, present: bool) -> List[Edge]:
        return [(i, j) for i, j in upper_triangle_pairs(self.n) if bool(self.adjacency[i, j]) == present]

    @abstractmethod
    def choose_edge(self) -> Edge:
        """
        Pick the next link to edit.

        Returns:
            (i, j) with i < j, absent for additions, present for removals
        """
        pass

    def step(self) -> Edge:
        if self.available() == 0:
            raise ContractError(f"{self.kind} exhausted after {self.steps_taken} steps: no legal edit")
        i, j = self.choose_edge()
        value = 1.0 if self.adds else 0.0
        self.adjacency[i, j] = self.adjacency[j, i] = value
        self._present += 1 if self.adds else -1
        self.steps_taken += 1
        return i, j

    def current_graph(self) -> Graph:
        return Graph(self.adjacency)


class QueuedProcess(EdgeProcess):
    """A process whose whole edit order is fixed at the start."""

    def __init__(self, start: Graph, rng: np.random.Generator):
        super().__init__(start, rng)
        self._queue = self.edit_order()
        self._next = 0

    @abstractmethod
    def edit_order(self) -> List[Edge]:
        pass

    def choose_edge(self) -> Edge:
        edge = self._queue[self._next]
        self._next += 1
        return edge


_REGISTRY: Dict[str, Type[EdgeProcess]] = {}


def register_process(cls: Type[EdgeProcess]) -> Type[EdgeProcess]:
    _REGISTRY[cls.kind] = cls
    return cls


def process_kinds() -> List[str]:
    return sorted(_REGISTRY)


def get_process(kind: str, start: Graph, rng: np.random.Generator) -> EdgeProcess:
    """Instantiate a registered process (RA, RR, SA, SR, HDA, HDR) on a start graph."""
    try:
        cls = _REGISTRY[kind.upper()]
    except KeyError:
        raise ContractError(f"unknown process {kind!r}; choose from {process_kinds()}")
    return cls(start, rng)
