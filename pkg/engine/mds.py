"""
Classical MDS
Planar (or dim-dimensional) embedding of a distance matrix by double
centering and eigendecomposition. Negative eigenvalues of the centred
matrix are dropped, so non-Euclidean inputs embed with positive stress.
"""

from dataclasses import dataclass, field
from typing import Tuple
import numpy as np
from scipy import linalg
import logging

from metrics.him_metric import DistanceMatrix
from utils.errors import ContractError, NumericalError

logger = logging.getLogger(__name__)

# eigenvalues at or below this fraction of the largest are treated as zero
EIGEN_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class Embedding:
    points: np.ndarray
    stress: float
    eigenvalues: np.ndarray
    labels: Tuple[str, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _as_matrix(distances) -> Tuple[np.ndarray, Tuple[str, ...]]:
    if isinstance(distances, DistanceMatrix):
        return np.asarray(distances.values, dtype=float), distances.labels
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ContractError(f"distance matrix must be square, got shape {d.shape}")
    if not np.allclose(d, d.T, rtol=0.0, atol=1e-12):
        raise ContractError("distance matrix is not symmetric")
    if np.any(np.abs(np.diagonal(d)) > 1e-12):
        raise ContractError("distance matrix diagonal must be 0")
    return d, tuple(f"g{k}" for k in range(d.shape[0]))


def classical_mds(distances, dim: int = 2) -> Embedding:
    """
    Args:
        distances: DistanceMatrix or symmetric zero-diagonal array
        dim: embedding dimension (>= 1)

    Returns:
        Embedding with centred coordinates; each axis is signed so that its
        largest-magnitude coordinate is positive
    """
    if dim < 1:
        raise ContractError(f"embedding dimension must be >= 1, got {dim}")
    d, labels = _as_matrix(distances)
    n = d.shape[0]

    # Centering matrix
    h = np.eye(n) - np.ones((n, n)) / n
    b = -h @ (d ** 2) @ h / 2
    b = (b + b.T) / 2

    try:
        evals, evecs = linalg.eigh(b)
    except linalg.LinAlgError as e:
        raise NumericalError(f"MDS eigendecomposition failed: {e}")

    # Descending order
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]

    cutoff = EIGEN_TOLERANCE * max(float(evals[0]), 0.0)
    negative_mass = float(-evals[evals < -cutoff].sum())
    if negative_mass > 0:
        logger.info(f"MDS dropped negative eigenvalue mass {negative_mass:.3e} (non-Euclidean input)")
    kept = np.where(evals[:dim] > cutoff, evals[:dim], 0.0)
    points = np.zeros((n, dim))
    take = min(dim, n)
    points[:, :take] = evecs[:, :take] * np.sqrt(kept[:take])
    # near-null axes may carry a tiny mean
    points -= points.mean(axis=0)

    for axis in range(dim):
        column = points[:, axis]
        if column.size and column[np.argmax(np.abs(column))] < 0:
            points[:, axis] = -column

    rows, cols = np.triu_indices(n, k=1)
    embedded = np.linalg.norm(points[rows] - points[cols], axis=1)
    stress = float(np.sum((embedded - d[rows, cols]) ** 2))
    logger.debug(f"MDS of {n} points into {dim}D: stress {stress:.3e}")
    return Embedding(points, stress, evals, labels)
