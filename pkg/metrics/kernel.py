"""
HIM Kernel
Gaussian kernel K(x, y) = exp(-kernel_gamma * HIM_xi(x, y)^2) and Gram matrices.

HIM^2 is not known to be of negative type, so a Gram matrix is not PSD by
construction; positivity is checked on every dataset and reported, never assumed.
"""

from dataclasses import dataclass, field
from typing import Tuple
import math
import numpy as np
from scipy import linalg
import logging

from graphs.graph_model import Graph
from metrics.him_metric import DEFAULT_XI, DistanceMatrix, him_distance
from utils.errors import ContractError, NumericalError

logger = logging.getLogger(__name__)

DEFAULT_KERNEL_GAMMA = 1.0
PSD_TOLERANCE = 1e-8


def check_kernel_gamma(kernel_gamma: float) -> float:
    kernel_gamma = float(kernel_gamma)
    if not kernel_gamma > 0 or math.isinf(kernel_gamma):
        raise ContractError(f"kernel_gamma must be a positive finite number, got {kernel_gamma}")
    return kernel_gamma


@dataclass(frozen=True, eq=False)
class GramMatrix:
    values: np.ndarray
    kernel_gamma: float
    xi: float
    min_eigenvalue: float
    max_eigenvalue: float
    psd: bool
    labels: Tuple[str, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.values.shape[0]


def him_kernel(g1: Graph, g2: Graph, kernel_gamma: float = DEFAULT_KERNEL_GAMMA,
               xi: float = DEFAULT_XI) -> float:
    kernel_gamma = check_kernel_gamma(kernel_gamma)
    him = him_distance(g1, g2, xi).him
    return math.exp(-kernel_gamma * him * him)


def gram_from_distances(distances: DistanceMatrix, kernel_gamma: float = DEFAULT_KERNEL_GAMMA,
                        psd_tolerance: float = PSD_TOLERANCE) -> GramMatrix:
    """
    Elementwise exp(-kernel_gamma * d^2) with an eigenvalue check.
    psd holds when min_eig >= -psd_tolerance * max_eig.
    """
    kernel_gamma = check_kernel_gamma(kernel_gamma)
    d = distances.values
    values = np.exp(-kernel_gamma * d * d)
    np.fill_diagonal(values, 1.0)

    try:
        eigs = linalg.eigvalsh(values)
    except linalg.LinAlgError as e:
        raise NumericalError(f"Gram eigenvalue check failed: {e}")
    min_eig, max_eig = float(eigs[0]), float(eigs[-1])
    psd = min_eig >= -psd_tolerance * max_eig

    if not psd:
        logger.warning(
            f"Gram matrix is not PSD on this data: min eigenvalue {min_eig:.3e}, "
            f"max {max_eig:.3e} (kernel_gamma={kernel_gamma}, xi={distances.xi})"
        )
    values.setflags(write=False)
    return GramMatrix(values, kernel_gamma, distances.xi, min_eig, max_eig, psd, distances.labels)
