"""
Process Simulation
Runs edge-evolution processes and records H, IM and HIM between the
evolving graph and its starting point after every step.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import time
import numpy as np
import pandas as pd
import logging

import processes  # noqa: F401  (registers the process kinds)
from graphs.graph_model import Graph, complete_graph, empty_graph, path_graph
from graphs.families import sample_family
from metrics.him_metric import DEFAULT_XI, HIMMeasure
from processes.base_process import get_process
from utils.errors import ContractError
from utils.parallel import SeedLike, make_rng, ordered_map, spawn_seeds

logger = logging.getLogger(__name__)

START_GRAPHS = ("empty", "clique", "path", "er", "ba", "pl")
SCALE_FREE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "BA": {"power": 1.0, "m": 1},
    "PL": {"exponent": 2.3},
}
ADDING_KINDS = ("RA", "SA", "HDA")


@dataclass(frozen=True)
class TraceStep:
    step: int
    h: float
    im: float
    him: float


@dataclass(frozen=True)
class ProcessTrace:
    """Distances from the start graph after each step; step 0 is the start itself."""

    kind: str
    seed: SeedLike
    steps: Tuple[TraceStep, ...]
    xi: float = DEFAULT_XI

    def __len__(self) -> int:
        return len(self.steps)

    def final(self) -> TraceStep:
        return self.steps[-1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(s.step, s.h, s.im, s.him) for s in self.steps],
            columns=["step", "h", "im", "him"],
        )


def start_graph(name: str, n: int, p: float = 0.5, seed: SeedLike = None,
                params: Optional[Dict[str, Any]] = None) -> Graph:
    """
    Named starting graph.

    Args:
        name: empty, clique, path, er (ER(n, p) sample), ba (preferential
            attachment) or pl (static-fitness scale-free graph)
        n: vertex count
        p: link probability of an er start
        seed: stream for the random starts
        params: family parameters of a ba or pl start; missing ones fall
            back to SCALE_FREE_DEFAULTS, then to the configured ranges

    Returns:
        Graph
    """
    name = name.lower()
    if name == "empty":
        return empty_graph(n)
    if name == "clique":
        return complete_graph(n)
    if name == "path":
        return path_graph(n)
    if name == "er":
        return sample_family("ER", n, {"p": p}, seed).graph
    if name in ("ba", "pl"):
        model = name.upper()
        full = {**SCALE_FREE_DEFAULTS[model], **(params or {})}
        if model == "PL":
            # sparse by default: as many links as a spanning tree
            full.setdefault("edges", n - 1)
        return sample_family(model, n, full, seed).graph
    raise ContractError(f"unknown start graph {name!r}; choose from {', '.join(START_GRAPHS)}")


def max_steps(start: Graph, kind: str) -> int:
    """Length of the full process: absent links for additions, present links for removals."""
    kind = kind.upper()
    slots = start.n * (start.n - 1) // 2
    return slots - start.edge_count if kind in ADDING_KINDS else start.edge_count


def evolve(start: Graph, kind: str, steps: Optional[int] = None, seed: SeedLike = None,
           xi: float = DEFAULT_XI) -> ProcessTrace:
    """
    Apply `steps` edits of process `kind` (the full process when None).

    Raises:
        ContractError: if the process runs out of legal edits first
    """
    process = get_process(kind, start, make_rng(seed))
    if steps is None:
        if process.available() == 0:
            raise ContractError(f"{process.kind} has no legal edit from this start graph")
        steps = process.available()
    if steps < 0:
        raise ContractError(f"step count must be >= 0, got {steps}")
    if steps > process.available():
        raise ContractError(
            f"{process.kind} can make only {process.available()} edits from this start, {steps} requested"
        )

    scorer = HIMMeasure(xi)
    origin = scorer.prepare(start)
    trace = [TraceStep(0, 0.0, 0.0, 0.0)]
    for i in range(1, steps + 1):
        process.step()
        report = scorer.report(origin, scorer.prepare(process.current_graph()))
        trace.append(TraceStep(i, report.h, report.im, report.him))

    return ProcessTrace(process.kind, seed, tuple(trace), xi)


def evolve_batch(start: Graph, kind: str, steps: Optional[int] = None, runs: int = 1,
                 seed: SeedLike = None, xi: float = DEFAULT_XI, threads: int = 1,
                 progress_callback: Optional[Callable[[str, int], None]] = None) -> List[ProcessTrace]:
    """`runs` independent runs; run k uses child stream k of the seed."""
    if runs < 1:
        raise ContractError(f"run count must be >= 1, got {runs}")
    started = time.time()
    seeds = spawn_seeds(seed, runs)
    traces = ordered_map(lambda s: evolve(start, kind, steps, s, xi), seeds, threads,
                         progress_callback, label=f"{kind} runs")
    logger.info(f"{runs} {kind} runs of {len(traces[0]) - 1} steps in {time.time() - started:.2f}s")
    return traces


def mean_trace(traces: Sequence[ProcessTrace]) -> pd.DataFrame:
    """Step-wise mean and standard deviation of h, im and him across runs."""
    if not traces:
        raise ContractError("no traces to average")
    lengths = {len(t) for t in traces}
    if len(lengths) != 1:
        raise ContractError(f"traces have different lengths: {sorted(lengths)}")

    stacked = pd.concat([t.to_frame() for t in traces], ignore_index=True)
    grouped = stacked.groupby("step")[["h", "im", "him"]]
    means = grouped.mean()
    stds = grouped.std(ddof=0).add_suffix("_std")
    return means.join(stds).reset_index()
