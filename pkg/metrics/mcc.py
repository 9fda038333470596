"""
Matthews Correlation
Link-level agreement between two unweighted graphs, one read as the
prediction and the other as the truth.
"""

from dataclasses import dataclass
import math
import numpy as np
import logging

from graphs.graph_model import Graph
from metrics.base_measure import check_compatible
from utils.errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def _link_slots(g: Graph) -> np.ndarray:
    """Upper-triangle slots if undirected, all off-diagonal slots if directed."""
    if g.directed:
        return g.weights[~np.eye(g.n, dtype=bool)]
    return g.weights[np.triu_indices(g.n, k=1)]


def confusion_counts(prediction: Graph, truth: Graph) -> ConfusionCounts:
    check_compatible(prediction, truth)
    if not (prediction.is_unweighted and truth.is_unweighted):
        raise ContractError("MCC needs unweighted graphs")
    pred = _link_slots(prediction).astype(bool)
    true = _link_slots(truth).astype(bool)
    return ConfusionCounts(
        tp=int(np.sum(pred & true)),
        fp=int(np.sum(pred & ~true)),
        tn=int(np.sum(~pred & ~true)),
        fn=int(np.sum(~pred & true)),
    )


def mcc(g1: Graph, g2: Graph) -> float:
    """
    (TP*TN - FP*FN) / sqrt((TP+FP)(TP+FN)(TN+FP)(TN+FN)), in [-1, 1].
    A zero factor in the denominator gives 0.
    """
    c = confusion_counts(g1, g2)
    denominator = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn)
    if denominator == 0:
        return 0.0
    return (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denominator)


def mcc_dissimilarity(g1: Graph, g2: Graph) -> float:
    """(1 - MCC) / 2, in [0, 1]."""
    return (1.0 - mcc(g1, g2)) / 2.0
