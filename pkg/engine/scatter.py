"""
MCC Scatter
Random pairs of unweighted graphs measured by (1 - MCC)/2, H, IM and HIM.

Pair law: size n ~ U{size_min..size_max}; g1 ~ ER(n, p) with
p ~ U(density_min, density_max); g2 is g1 with k links swapped (k present
links removed, k absent links added), k ~ U{0..min(E, S - E)} where S is
the number of vertex pairs and E the link count of g1.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple
import numpy as np
import pandas as pd
from scipy import stats
import logging

from graphs.families import sample_family
from graphs.graph_model import Graph
from metrics.him_metric import DEFAULT_XI, him_distance
from metrics.mcc import mcc_dissimilarity
from utils.config_loader import get_config_loader
from utils.errors import ContractError
from utils.parallel import SeedLike, make_rng, networkx_seed, ordered_map, spawn_seeds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScatterRow:
    mcc_dissim: float
    h: float
    im: float
    him: float


def _swap_links(g: Graph, swaps: int, rng: np.random.Generator) -> Graph:
    rows, cols = np.triu_indices(g.n, k=1)
    present = g.weights[rows, cols] > 0
    on = np.flatnonzero(present)
    off = np.flatnonzero(~present)
    w = np.array(g.weights)
    if swaps:
        removed = rng.choice(on, size=swaps, replace=False)
        added = rng.choice(off, size=swaps, replace=False)
        w[rows[removed], cols[removed]] = w[cols[removed], rows[removed]] = 0
        w[rows[added], cols[added]] = w[cols[added], rows[added]] = 1
    return Graph(w)


def random_pair(size_range: Tuple[int, int], density_range: Tuple[float, float],
                seed: SeedLike = None) -> Tuple[Graph, Graph]:
    rng = make_rng(seed)
    n = int(rng.integers(size_range[0], size_range[1] + 1))
    p = float(rng.uniform(*density_range))
    g1 = sample_family("ER", n, {"p": p}, networkx_seed(rng)).graph
    slots = n * (n - 1) // 2
    links = g1.edge_count
    swaps = int(rng.integers(0, min(links, slots - links) + 1))
    return g1, _swap_links(g1, swaps, rng)


def mcc_him_scatter(count: int, size_range: Optional[Tuple[int, int]] = None,
                    seed: SeedLike = None, xi: float = DEFAULT_XI,
                    density_range: Optional[Tuple[float, float]] = None, threads: int = 1,
                    progress_callback: Optional[Callable[[str, int], None]] = None) -> Tuple[ScatterRow, ...]:
    """One row per random pair; pair k uses child stream k of the seed."""
    if count < 1:
        raise ContractError(f"pair count must be >= 1, got {count}")
    settings = get_config_loader().load_settings()["scatter"]
    size_range = size_range or (settings["size_min"], settings["size_max"])
    density_range = density_range or (settings["density_min"], settings["density_max"])
    if not 2 <= size_range[0] <= size_range[1]:
        raise ContractError(f"size range must satisfy 2 <= min <= max, got {size_range}")

    def run(child) -> ScatterRow:
        g1, g2 = random_pair(size_range, density_range, child)
        report = him_distance(g1, g2, xi)
        return ScatterRow(mcc_dissimilarity(g1, g2), report.h, report.im, report.him)

    rows = ordered_map(run, spawn_seeds(seed, count), threads, progress_callback, label="pairs")
    return tuple(rows)


def scatter_frame(rows: Sequence[ScatterRow]) -> pd.DataFrame:
    return pd.DataFrame([(r.mcc_dissim, r.h, r.im, r.him) for r in rows],
                        columns=["mcc_dissim", "h", "im", "him"])


def scatter_correlations(rows: Sequence[ScatterRow]) -> Dict[str, float]:
    """Pearson coefficient of (1 - MCC)/2 against each of h, im and him."""
    frame = scatter_frame(rows)
    if len(frame) < 2:
        raise ContractError("correlations need at least 2 rows")
    return {
        column: float(stats.pearsonr(frame["mcc_dissim"], frame[column])[0])
        for column in ("h", "im", "him")
    }
