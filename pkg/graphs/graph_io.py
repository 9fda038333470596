"""
Graph I/O
Reads and writes graphs as adjacency CSV or edge-list TSV, and loads
graph collections from files or directories.

Adjacency CSV: n rows of n comma-separated values, no header.
Edge list TSV: header "#n=<N> directed=<0|1>", then "i<TAB>j<TAB>w" lines
with 0-based indices; unlisted pairs weigh 0; undirected edges listed once.
"""

import re
from pathlib import Path
from typing import Iterable, List, Union
import numpy as np
import pandas as pd
import logging

from graphs.graph_model import Graph, GraphCollection, from_adjacency
from utils.errors import InputError

logger = logging.getLogger(__name__)

EDGE_LIST_SUFFIXES = {".tsv", ".edges"}
GRAPH_SUFFIXES = {".csv"} | EDGE_LIST_SUFFIXES

_HEADER_RE = re.compile(r"^#\s*n\s*=\s*(\d+)\s+directed\s*=\s*([01])\s*$")

PathLike = Union[str, Path]


def read_adjacency_csv(path: PathLike, directed: bool = False) -> Graph:
    """Parse an adjacency CSV into a validated Graph."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, header=None, dtype=float, skipinitialspace=True)
    except FileNotFoundError:
        raise InputError(f"{path}: file not found")
    except pd.errors.EmptyDataError:
        raise InputError(f"{path}: file is empty")
    except (pd.errors.ParserError, ValueError) as e:
        raise InputError(f"{path}: cannot parse adjacency CSV ({e})")

    try:
        return from_adjacency(frame.to_numpy(), directed)
    except InputError as e:
        raise InputError(f"{path}: {e}")


def read_edge_list(path: PathLike) -> Graph:
    """Parse an edge-list TSV; directedness comes from its header line."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except FileNotFoundError:
        raise InputError(f"{path}: file not found")

    if not lines:
        raise InputError(f"{path}: file is empty")
    match = _HEADER_RE.match(lines[0].strip())
    if not match:
        raise InputError(f"{path}: first line must be '#n=<N> directed=<0|1>', got {lines[0]!r}")
    n, directed = int(match.group(1)), match.group(2) == "1"
    if n < 1:
        raise InputError(f"{path}: vertex count must be >= 1")

    w = np.zeros((n, n))
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InputError(f"{path}:{lineno}: expected 'i<TAB>j<TAB>w', got {line!r}")
        try:
            i, j, weight = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise InputError(f"{path}:{lineno}: malformed edge {line!r}")
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"{path}:{lineno}: vertex index out of range 0..{n - 1}")

        # a link i -> j is stored at (j, i)
        slots = [(j, i)] if directed else [(i, j), (j, i)]
        for r, c in slots:
            if w[r, c] not in (0.0, weight):
                raise InputError(f"{path}:{lineno}: conflicting weight for pair ({i}, {j})")
            w[r, c] = weight

    try:
        return from_adjacency(w, directed)
    except InputError as e:
        raise InputError(f"{path}: {e}")


def read_graph(path: PathLike, directed: bool = False) -> Graph:
    """Dispatch on suffix: .tsv/.edges are edge lists, anything else adjacency CSV."""
    path = Path(path)
    if path.suffix.lower() in EDGE_LIST_SUFFIXES:
        return read_edge_list(path)
    return read_adjacency_csv(path, directed)


def expand_inputs(inputs: Iterable[PathLike]) -> List[Path]:
    """Files as given; directories replaced by their graph files, sorted lexicographically."""
    paths: List[Path] = []
    for item in inputs:
        item = Path(item)
        if item.is_dir():
            paths.extend(sorted(
                (p for p in item.iterdir() if p.is_file() and p.suffix.lower() in GRAPH_SUFFIXES),
                key=lambda p: p.name
            ))
        elif item.exists():
            paths.append(item)
        else:
            raise InputError(f"{item}: no such file or directory")
    return paths


def read_collection(inputs: Iterable[PathLike], directed: bool = False) -> GraphCollection:
    """Load a homogeneous collection, labelled by file stem."""
    paths = expand_inputs(inputs)
    if not paths:
        raise InputError("no graph files found in the given inputs")
    graphs = [read_graph(p, directed) for p in paths]
    logger.info(f"Loaded {len(graphs)} graphs on {graphs[0].n} vertices")
    return GraphCollection(tuple(graphs), tuple(p.stem for p in paths))


def write_adjacency_csv(graph: Graph, path: PathLike) -> None:
    """Integers for unweighted graphs, 9 significant digits otherwise."""
    fmt = "%d" if graph.is_unweighted else "%.9g"
    np.savetxt(Path(path), graph.weights, delimiter=",", fmt=fmt)


def write_edge_list(graph: Graph, path: PathLike) -> None:
    rows = [f"#n={graph.n} directed={int(graph.directed)}"]
    w = graph.weights
    for r, c in zip(*np.nonzero(w)):
        if graph.directed:
            rows.append(f"{c}\t{r}\t{w[r, c]:.9g}")
        elif r < c:
            rows.append(f"{r}\t{c}\t{w[r, c]:.9g}")
    Path(path).write_text("\n".join(rows) + "\n")
