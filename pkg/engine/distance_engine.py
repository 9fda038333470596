"""
Distance Engine
Coordinates pairwise measure evaluation over graph collections.
Each graph is prepared once (its spectrum for IM/HIM); pairs then run on a
worker pool and land in the matrix by index.
"""

from typing import Callable, List, Optional, Tuple
import time
import numpy as np
import logging

from graphs.graph_model import GraphCollection
from metrics.base_measure import get_measure
from metrics.him_metric import DEFAULT_XI, DistanceMatrix, check_xi
from metrics.kernel import DEFAULT_KERNEL_GAMMA, PSD_TOLERANCE, GramMatrix, gram_from_distances
from utils.errors import ContractError
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[str, int], None]


class DistanceEngine:
    """
    Pairwise H / IM / HIM over a collection.

    Args:
        threads: worker count (>= 1); results do not depend on it
        progress_callback: optional callable(message, pct) receiving updates
    """

    def __init__(self, threads: int = 1, progress_callback: Optional[ProgressCallback] = None):
        if threads < 1:
            raise ContractError(f"thread count must be >= 1, got {threads}")
        self.threads = threads
        self.progress_callback = progress_callback

    def _update_progress(self, message: str, pct: int):
        if self.progress_callback:
            self.progress_callback(message, pct)

    @staticmethod
    def _pairs(size: int) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(size) for j in range(i + 1, size)]

    def distance_matrix(self, collection: GraphCollection, measure: str = "him",
                        xi: float = DEFAULT_XI) -> DistanceMatrix:
        if len(collection) < 2:
            raise ContractError("a distance matrix needs at least 2 graphs")
        measure = measure.lower()
        xi = check_xi(xi)
        scorer = get_measure(measure, xi=xi) if measure == "him" else get_measure(measure)

        start = time.time()
        prepared = ordered_map(scorer.prepare, collection.graphs, self.threads,
                               self._update_progress, label="preparing graphs")
        pairs = self._pairs(len(collection))
        values = ordered_map(lambda p: scorer.between(prepared[p[0]], prepared[p[1]]), pairs,
                             self.threads, self._update_progress, label=f"{measure} pairs")

        matrix = np.zeros((len(collection), len(collection)))
        for (i, j), value in zip(pairs, values):
            matrix[i, j] = matrix[j, i] = value

        logger.info(f"{measure} matrix over {len(collection)} graphs ({len(pairs)} pairs) in {time.time() - start:.2f}s")
        return DistanceMatrix(matrix, measure, xi, collection.labels)

    def gram_matrix(self, collection: GraphCollection, kernel_gamma: float = DEFAULT_KERNEL_GAMMA,
                    xi: float = DEFAULT_XI, psd_tolerance: float = PSD_TOLERANCE) -> GramMatrix:
        distances = self.distance_matrix(collection, "him", xi)
        gram = gram_from_distances(distances, kernel_gamma, psd_tolerance)
        self._update_progress(f"Gram matrix ready (psd={gram.psd})", 100)
        return gram


def distance_matrix(collection: GraphCollection, measure: str = "him", xi: float = DEFAULT_XI,
                    threads: int = 1, progress_callback: Optional[ProgressCallback] = None) -> DistanceMatrix:
    return DistanceEngine(threads, progress_callback).distance_matrix(collection, measure, xi)


def gram_matrix(collection: GraphCollection, kernel_gamma: float = DEFAULT_KERNEL_GAMMA,
                xi: float = DEFAULT_XI, threads: int = 1,
                progress_callback: Optional[ProgressCallback] = None,
                psd_tolerance: float = PSD_TOLERANCE) -> GramMatrix:
    return DistanceEngine(threads, progress_callback).gram_matrix(collection, kernel_gamma, xi, psd_tolerance)
