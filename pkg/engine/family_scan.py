"""
Family Scan
Distances of random family samples from the empty graph, plus the
within/between family statistics of a labelled multi-family collection.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import time
import numpy as np
import pandas as pd
import logging

from graphs.families import FamilySample, sample_family
from graphs.graph_model import GraphCollection, empty_graph
from metrics.him_metric import DEFAULT_XI, DistanceMatrix, DistanceReport, HIMMeasure
from utils.errors import ContractError
from utils.parallel import SeedLike, ordered_map, spawn_seeds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyScan:
    model: str
    n: int
    seed: SeedLike
    samples: Tuple[FamilySample, ...]
    reports: Tuple[DistanceReport, ...]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(k, r.h, r.im, r.him) for k, r in enumerate(self.reports)],
            columns=["sample", "h", "im", "him"],
        )

    def summary(self) -> Dict[str, float]:
        """Mean and sample standard deviation of each distance (0 for a single sample)."""
        frame = self.to_frame()[["h", "im", "him"]]
        stats: Dict[str, float] = {}
        for column in frame.columns:
            stats[f"{column}_mean"] = float(frame[column].mean())
            stats[f"{column}_std"] = float(frame[column].std(ddof=1)) if len(frame) > 1 else 0.0
        return stats


def family_scan(model: str, n: int, count: int, seed: SeedLike = None,
                params: Optional[Dict[str, Any]] = None, xi: float = DEFAULT_XI,
                threads: int = 1,
                progress_callback: Optional[Callable[[str, int], None]] = None) -> FamilyScan:
    """Sample `count` graphs of one family and measure each against E_n."""
    if count < 1:
        raise ContractError(f"sample count must be >= 1, got {count}")
    started = time.time()
    scorer = HIMMeasure(xi)
    origin = scorer.prepare(empty_graph(n))

    def run(child) -> Tuple[FamilySample, DistanceReport]:
        sample = sample_family(model, n, params, child)
        return sample, scorer.report(scorer.prepare(sample.graph), origin)

    results = ordered_map(run, spawn_seeds(seed, count), threads, progress_callback,
                          label=f"{model.upper()} samples")
    logger.info(f"{count} {model.upper()} samples on {n} vertices scanned in {time.time() - started:.2f}s")
    return FamilyScan(model.upper(), n, seed,
                      tuple(s for s, _ in results), tuple(r for _, r in results))


def family_collection(models: Sequence[str], n: int, count: int, seed: SeedLike = None,
                      params: Optional[Dict[str, Dict[str, Any]]] = None
                      ) -> Tuple[GraphCollection, List[str]]:
    """
    `count` samples of each model, labelled <MODEL>_<k>.
    Sample k of model m uses child stream m * count + k.

    Returns:
        (collection, group label of each graph)
    """
    if count < 1 or not models:
        raise ContractError("family_collection needs at least one model and count >= 1")
    params = params or {}
    seeds = spawn_seeds(seed, len(models) * count)
    graphs, labels, groups = [], [], []
    for m, model in enumerate(models):
        model = model.upper()
        for k in range(count):
            sample = sample_family(model, n, params.get(model), seeds[m * count + k])
            graphs.append(sample.graph)
            labels.append(f"{model}_{k:03d}")
            groups.append(model)
    return GraphCollection(tuple(graphs), tuple(labels)), groups


def family_block_statistics(matrix: DistanceMatrix, groups: Sequence[str]) -> pd.DataFrame:
    """
    Mean and standard deviation of distances within each group and between
    each pair of groups; within-group blocks use unordered pairs only.
    """
    if len(groups) != matrix.size:
        raise ContractError(f"{len(groups)} group labels for {matrix.size} graphs")
    groups = np.asarray(groups)
    names = list(dict.fromkeys(groups.tolist()))
    rows = []
    for a_pos, a in enumerate(names):
        ia = np.flatnonzero(groups == a)
        for b in names[a_pos:]:
            ib = np.flatnonzero(groups == b)
            block = matrix.values[np.ix_(ia, ib)]
            if a == b:
                block = block[np.triu_indices(len(ia), k=1)]
            values = block.ravel()
            rows.append({
                "group_a": a,
                "group_b": b,
                "mean": float(values.mean()) if values.size else float("nan"),
                "std": float(values.std(ddof=0)) if values.size else float("nan"),
                "pairs": int(values.size),
            })
    return pd.DataFrame(rows, columns=["group_a", "group_b", "mean", "std", "pairs"])
