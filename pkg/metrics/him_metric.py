"""
HIM Distance
The HIM_xi product metric: the Euclidean combination of the Hamming (local)
and Ipsen-Mikhailov (global) distances, normalized by 1/sqrt(1 + xi).
xi = 0 gives Hamming alone and xi -> inf approaches Ipsen-Mikhailov alone.
"""

from dataclasses import dataclass, field
from typing import Any, Tuple
import math
import numpy as np
import logging

from graphs.graph_model import Graph
from metrics.base_measure import GraphMeasure, check_compatible, register_measure
from metrics.hamming import hamming_distance
from metrics.spectral import graph_spectrum, im_distance, im_from_spectra
from utils.errors import ContractError

logger = logging.getLogger(__name__)

DEFAULT_XI = 1.0
ZONE_SPLIT = 0.5

MEASURES = ("h", "im", "him")


@dataclass(frozen=True)
class DistanceReport:
    """One point of the (H, IM) plane together with its HIM value."""

    h: float
    im: float
    him: float
    xi: float = DEFAULT_XI

    def zone(self, split: float = ZONE_SPLIT) -> str:
        """
        Quadrant of the H/IM plane:
        I   low H, low IM   (close networks)
        II  low H, high IM  (few link changes, different structure)
        III high H, high IM (far networks)
        IV  high H, low IM  (many link changes, similar structure)
        """
        high_h = self.h >= split
        high_im = self.im >= split
        if high_h:
            return "III" if high_im else "IV"
        return "II" if high_im else "I"

    def as_dict(self) -> dict:
        return {"h": self.h, "im": self.im, "him": self.him, "xi": self.xi}


def check_xi(xi: float) -> float:
    xi = float(xi)
    if math.isnan(xi) or xi < 0:
        raise ContractError(f"xi must be >= 0, got {xi}")
    return xi


def him_value(h: float, im: float, xi: float = DEFAULT_XI) -> float:
    """sqrt(h^2 + xi * im^2) / sqrt(1 + xi); xi = inf returns im."""
    xi = check_xi(xi)
    if math.isinf(xi):
        return im
    if xi == 0:
        return h
    return math.sqrt(h * h + xi * im * im) / math.sqrt(1.0 + xi)


def him_distance(g1: Graph, g2: Graph, xi: float = DEFAULT_XI) -> DistanceReport:
    """H, IM and HIM_xi for one graph pair."""
    xi = check_xi(xi)
    check_compatible(g1, g2)
    h = hamming_distance(g1, g2).value
    im = im_distance(g1, g2)
    return DistanceReport(h, im, him_value(h, im, xi), xi)


@register_measure
class HIMMeasure(GraphMeasure):
    """HIM_xi with each graph's spectrum computed once in prepare()."""

    name = "him"

    def __init__(self, xi: float = DEFAULT_XI):
        self.xi = check_xi(xi)

    def prepare(self, graph: Graph) -> Tuple[Graph, Any]:
        return graph, graph_spectrum(graph)

    def between(self, first: Tuple[Graph, Any], second: Tuple[Graph, Any]) -> float:
        return self.report(first, second).him

    def report(self, first: Tuple[Graph, Any], second: Tuple[Graph, Any]) -> DistanceReport:
        (g1, s1), (g2, s2) = first, second
        h = hamming_distance(g1, g2).value
        im = im_from_spectra(s1, s2)
        return DistanceReport(h, im, him_value(h, im, self.xi), self.xi)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances over a labelled collection."""

    values: np.ndarray
    measure: str
    xi: float = DEFAULT_XI
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ContractError(f"distance matrix must be square, got shape {v.shape}")
        if not np.array_equal(v, v.T):
            raise ContractError("distance matrix is not symmetric")
        if np.any(np.diagonal(v) != 0):
            raise ContractError("distance matrix diagonal must be exactly 0")
        labels = tuple(self.labels) if self.labels else tuple(f"g{k}" for k in range(v.shape[0]))
        if len(labels) != v.shape[0]:
            raise ContractError(f"{len(labels)} labels for a {v.shape[0]}x{v.shape[0]} matrix")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def pair_values(self) -> np.ndarray:
        """Upper-triangle entries in row-major order."""
        return self.values[np.triu_indices(self.size, k=1)]
