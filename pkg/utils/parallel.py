"""
Parallel Helpers
Thread-pool map that returns results in input order, with progress reporting,
and the random-stream rule that keeps parallel runs reproducible.

Stream rule: item k of a batch of `count` items seeded with `seed` draws from
Generator(PCG64(SeedSequence(seed).spawn(count)[k])). A single run uses
SeedSequence(seed) itself.
"""

from typing import Callable, Iterable, List, Optional, TypeVar, Union
from concurrent.futures import ThreadPoolExecutor, as_completed
import numpy as np
import logging

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

ProgressCallback = Callable[[str, int], None]


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    threads: int = 1,
    progress: Optional[ProgressCallback] = None,
    label: str = "items"
) -> List[R]:
    """
    Apply fn to every item, concurrently when threads > 1.

    Results are stored by input position, so the output never depends on
    completion order or thread count. The first exception raised by fn is
    re-raised after the pool shuts down.
    """
    items = list(items)
    total = len(items)
    results: List[Optional[R]] = [None] * total

    def report(done: int):
        if progress is not None and total:
            progress(f"{label}: {done}/{total}", int(100 * done / total))

    if threads <= 1 or total <= 1:
        for i, item in enumerate(items):
            results[i] = fn(item)
            report(i + 1)
        return results

    with ThreadPoolExecutor(max_workers=threads) as executor:
        future_to_index = {executor.submit(fn, item): i for i, item in enumerate(items)}

        completed = 0
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                results[index] = future.result()
            except Exception as e:
                logger.error(f"Worker failed on {label} #{index}: {e}")
                for pending in future_to_index:
                    pending.cancel()
                raise
            completed += 1
            report(completed)

    return results


SeedLike = Union[None, int, np.random.SeedSequence]


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """PCG64 generator from an int seed or an already spawned SeedSequence."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: SeedLike, count: int) -> List[np.random.SeedSequence]:
    """One independent child stream per batch item."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return seed.spawn(count)


def networkx_seed(rng: np.random.Generator) -> int:
    """Integer seed for networkx generators, drawn from the caller's stream."""
    return int(rng.integers(0, 2 ** 32 - 1))
