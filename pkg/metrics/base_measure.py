"""
Base Measure Class
Abstract base class for graph-pair measures.
Separates per-graph preparation (e.g. an eigendecomposition) from the
pairwise comparison, so collection-level runs prepare each graph once.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Type
import logging

from graphs.graph_model import Graph
from utils.errors import ContractError

logger = logging.getLogger(__name__)


class GraphMeasure(ABC):
    """
    Abstract base class for all distances in the system.
    Each measure compares two graphs on the same vertex set.
    """

    name: str = "measure"

    def prepare(self, graph: Graph) -> Any:
        """Per-graph data reused across pairs. Default: the graph itself."""
        return graph

    @abstractmethod
    def between(self, first: Any, second: Any) -> float:
        """
        Distance between two prepared graphs.

        Args:
            first: output of prepare() for the first graph
            second: output of prepare() for the second graph

        Returns:
            distance value
        """
        pass

    def compare(self, g1: Graph, g2: Graph) -> float:
        check_compatible(g1, g2)
        return self.between(self.prepare(g1), self.prepare(g2))


def check_compatible(g1: Graph, g2: Graph) -> None:
    """Both graphs must share vertex count and directedness."""
    if g1.n != g2.n:
        raise ContractError(f"vertex count mismatch: {g1.n} vs {g2.n}")
    if g1.directed != g2.directed:
        raise ContractError("cannot compare a directed graph with an undirected one")


_REGISTRY: Dict[str, Type[GraphMeasure]] = {}


def register_measure(cls: Type[GraphMeasure]) -> Type[GraphMeasure]:
    _REGISTRY[cls.name] = cls
    return cls


def get_measure(name: str, **kwargs) -> GraphMeasure:
    """Instantiate a registered measure by name (h, im, him)."""
    try:
        cls = _REGISTRY[name.lower()]
    except KeyError:
        raise ContractError(f"unknown measure {name!r}; choose from {sorted(_REGISTRY)}")
    return cls(**kwargs)
