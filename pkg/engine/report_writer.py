"""
Report Writer
CSV outputs of every workflow. Matrices use a header row of labels and
9 significant digits; other tables are written with pandas.
"""

from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union
import numpy as np
import pandas as pd
import logging

from engine.family_scan import FamilyScan
from engine.mds import Embedding
from engine.scatter import ScatterRow, scatter_frame
from engine.simulation import ProcessTrace
from metrics.him_metric import DistanceMatrix
from metrics.kernel import GramMatrix
from utils.errors import ContractError, InputError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"

PathLike = Union[str, Path]


def _matrix_frame(values: np.ndarray, labels: Sequence[str]) -> pd.DataFrame:
    return pd.DataFrame(values, columns=list(labels))


def _write(path: PathLike, comments: Iterable[str], frame: pd.DataFrame,
           trailing: Iterable[str] = ()) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        for line in comments:
            f.write(f"#{line}\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        for line in trailing:
            f.write(f"#{line}\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")


def write_distance_matrix(matrix: DistanceMatrix, path: PathLike) -> None:
    _write(path, [], _matrix_frame(matrix.values, matrix.labels))


def read_distance_matrix(path: PathLike, measure: str = "him", xi: float = 1.0) -> DistanceMatrix:
    """Inverse of write_distance_matrix; header row supplies the labels."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, comment="#", dtype=float)
    except FileNotFoundError:
        raise InputError(f"{path}: file not found")
    except (pd.errors.EmptyDataError, pd.errors.ParserError, ValueError) as e:
        raise InputError(f"{path}: cannot parse distance matrix ({e})")
    if frame.shape[0] != frame.shape[1]:
        raise InputError(f"{path}: expected a square matrix, got shape {frame.shape}")
    try:
        return DistanceMatrix(frame.to_numpy(), measure, xi, tuple(str(c) for c in frame.columns))
    except ContractError as e:
        raise ContractError(f"{path}: {e}")


def write_gram_matrix(gram: GramMatrix, path: PathLike) -> None:
    header = (f"kernel_gamma={gram.kernel_gamma:.9g} xi={gram.xi:.9g} "
              f"min_eig={gram.min_eigenvalue:.9g} psd={str(gram.psd).lower()}")
    _write(path, [header], _matrix_frame(gram.values, gram.labels))


def write_trace(trace: ProcessTrace, path: PathLike) -> None:
    _write(path, [], trace.to_frame())


def write_mean_trace(frame: pd.DataFrame, path: PathLike) -> None:
    _write(path, [], frame)


def write_family_scan(scan: FamilyScan, path: PathLike) -> None:
    summary = scan.summary()
    trailing = [f"model={scan.model} n={scan.n} samples={len(scan.reports)}"]
    trailing += [f"{key}={value:.9g}" for key, value in summary.items()]
    _write(path, [], scan.to_frame(), trailing)


def write_block_statistics(frame: pd.DataFrame, path: PathLike) -> None:
    _write(path, [], frame)


def write_embedding(embedding: Embedding, path: PathLike) -> None:
    columns = ["x", "y", "z"][:embedding.dim] if embedding.dim <= 3 else [f"x{k}" for k in range(embedding.dim)]
    frame = pd.DataFrame(embedding.points, columns=columns)
    frame.insert(0, "label", list(embedding.labels))
    _write(path, [], frame, [f"stress={embedding.stress:.9g}"])


def write_scatter(rows: Sequence[ScatterRow], path: PathLike,
                  correlations: Optional[dict] = None) -> None:
    trailing: List[str] = []
    if correlations:
        trailing = [f"pearson_{k}={v:.9g}" for k, v in correlations.items()]
    _write(path, [], scatter_frame(rows), trailing)
