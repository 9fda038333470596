"""
Spectral Distance
Laplacian spectra, Lorentz spectral densities and the Ipsen-Mikhailov
distance between graphs.

The density of a graph with vibrational frequencies w_i = sqrt(lambda_i) is

    rho(w, gamma) = K * sum_{i=1}^{N-1} gamma / ((w - w_i)^2 + gamma^2)

on [0, inf), and eps_gamma is the L2 distance between two densities.
eps_gamma is computed in closed form: expanding the square leaves a
quadratic form over pairwise integrals of two Lorentz kernels, which are
elementary (log/arctan). Adaptive quadrature is kept as an oracle.

IM is eps_gamma at the width gamma-bar for which the empty and complete
graphs are at distance exactly 1; directed graphs use their bipartite
doubles and the corresponding width gamma-bar-up.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple
import math
import numpy as np
from scipy import linalg
from scipy.integrate import quad
from scipy.optimize import brentq
import logging

from graphs.graph_model import Graph, directed_to_bipartite
from metrics.base_measure import GraphMeasure, check_compatible, register_measure
from utils.errors import ContractError, NumericalError

logger = logging.getLogger(__name__)

# negatives down to -SNAP_TOLERANCE * lambda_max are round-off
SNAP_TOLERANCE = 1e-9
# positives below ZERO_TOLERANCE * lambda_max are round-off around a zero eigenvalue
ZERO_TOLERANCE = 1e-12
# |w_a - w_b| below this (relative) uses the equal-frequency integral M
SWITCH_TOLERANCE = 1e-6
# frequencies of the two densities closer than this (relative) share one kernel
MERGE_TOLERANCE = 1e-9
ROOT_TOLERANCE = 1e-10
BRACKET_START = 0.01
MAX_BRACKET_DOUBLINGS = 64


@dataclass(frozen=True, eq=False)
class LaplacianSpectrum:
    """Ascending Laplacian eigenvalues, lambda_0 = 0."""

    eigenvalues: np.ndarray
    source_directed: bool = False

    def __post_init__(self):
        vals = np.array(self.eigenvalues, dtype=float, copy=True)
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def frequencies(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)

    @property
    def original_n(self) -> int:
        """Vertex count of the graph the spectrum came from (before bipartite doubling)."""
        return self.n // 2 if self.source_directed else self.n


@dataclass(frozen=True, eq=False)
class LorentzDensity:
    """rho(w, gamma) over the N-1 frequencies w_1..w_{N-1}."""

    frequencies: np.ndarray
    gamma: float
    k_norm: float

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        diff = omega[..., None] - self.frequencies
        return self.k_norm * np.sum(self.gamma / (diff * diff + self.gamma ** 2), axis=-1)

    def total_mass(self) -> float:
        """Integral of rho over [0, inf) by adaptive quadrature; 1 up to quadrature error."""
        return _integrate_peaked(self, self.frequencies, self.gamma)


@dataclass(frozen=True)
class GammaBar:
    n: int
    value: float
    directed: bool


# ---------------------------------------------------------------------------
# Laplacian and spectrum
# ---------------------------------------------------------------------------

def laplacian(g: Graph) -> np.ndarray:
    """L = D - A with weighted degrees; rows sum to 0."""
    if g.directed:
        raise ContractError("laplacian needs an undirected graph; use directed_to_bipartite first")
    return np.diag(g.degrees()) - g.weights


def spectrum(lap: np.ndarray, source_directed: bool = False) -> LaplacianSpectrum:
    """Ascending eigenvalues of a symmetric Laplacian with round-off snapped to 0."""
    lap = np.asarray(lap, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise ContractError(f"Laplacian must be square, got shape {lap.shape}")
    scale = max(1.0, float(np.abs(lap).max())) if lap.size else 1.0
    if not np.allclose(lap, lap.T, rtol=0.0, atol=1e-12 * scale):
        raise ContractError("Laplacian is not symmetric")

    try:
        vals = linalg.eigh(lap, eigvals_only=True)
    except linalg.LinAlgError as e:
        raise NumericalError(f"eigensolver did not converge: {e}")

    vals = np.sort(vals)
    lam_max = float(vals[-1])
    if vals[0] < -SNAP_TOLERANCE * abs(lam_max):
        raise NumericalError(f"Laplacian has a negative eigenvalue {vals[0]:.3e} beyond round-off")
    vals[np.abs(vals) <= ZERO_TOLERANCE * abs(lam_max)] = 0.0
    vals[vals < 0] = 0.0
    vals[0] = 0.0
    return LaplacianSpectrum(vals, source_directed)


def graph_spectrum(g: Graph) -> LaplacianSpectrum:
    """Spectrum of g, or of its bipartite double when g is directed."""
    if g.directed:
        return spectrum(laplacian(directed_to_bipartite(g)), source_directed=True)
    return spectrum(laplacian(g))


def extremal_spectrum(n: int, full: bool, directed: bool = False) -> LaplacianSpectrum:
    """
    Closed-form spectra of the extremal graphs, no eigensolver:
    E_N -> zeros, F_N -> (0, N x (N-1)); bipartite doubles of the directed
    extremes -> zeros (2N), and (0, N-2 x (N-1), N x (N-1), 2N-2).
    """
    if n < 1:
        raise ContractError(f"vertex count must be >= 1, got {n}")
    if not directed:
        vals = np.zeros(n)
        if full:
            vals[1:] = n
        return LaplacianSpectrum(vals)

    if not full:
        return LaplacianSpectrum(np.zeros(2 * n), source_directed=True)
    vals = np.concatenate([[0.0], np.full(n - 1, n - 2.0), np.full(n - 1, float(n)), [2.0 * n - 2]])
    return LaplacianSpectrum(np.sort(vals), source_directed=True)


# ---------------------------------------------------------------------------
# Lorentz densities and their pairwise integrals
# ---------------------------------------------------------------------------

def _check_gamma(gamma: float) -> None:
    if not gamma > 0:
        raise ContractError(f"Lorentz width must be > 0, got {gamma}")


def lorentz_density(spec: LaplacianSpectrum, gamma: float) -> LorentzDensity:
    """K = 1 / sum_i (pi/2 + arctan(w_i / gamma))."""
    _check_gamma(gamma)
    if spec.n < 2:
        raise ContractError("a Lorentz density needs at least 2 vertices")
    freqs = spec.frequencies[1:]
    k_norm = 1.0 / float(np.sum(np.pi / 2 + np.arctan(freqs / gamma)))
    return LorentzDensity(freqs, float(gamma), k_norm)


def _equal_frequency_integral(w: np.ndarray, gamma: float) -> np.ndarray:
    """M: integral over [0, inf) of 1 / (gamma^2 + (x - w)^2)^2."""
    g3 = gamma ** 3
    return np.pi / (4 * g3) + (np.arctan(w / gamma) + gamma * w / (gamma ** 2 + w * w)) / (2 * g3)


def _cross_integrals(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    """
    Matrix of integrals over [0, inf) of
    1 / ((gamma^2 + (x - a_i)^2) (gamma^2 + (x - b_j)^2)) for frequencies a, b.
    """
    fa = np.asarray(a, dtype=float)[:, None]
    fb = np.asarray(b, dtype=float)[None, :]
    d = fb - fa
    g2 = gamma * gamma
    width = d * d + 4 * g2

    arctan_part = (np.pi + np.arctan(fa / gamma) + np.arctan(fb / gamma)) / (gamma * width)
    with np.errstate(divide="ignore", invalid="ignore"):
        # log((gamma^2 + b^2) / (gamma^2 + a^2)) without cancellation
        log_part = np.log1p(d * (fa + fb) / (g2 + fa * fa)) / (d * width)

    near = np.abs(d) < SWITCH_TOLERANCE * (1.0 + np.minimum(fa, fb))
    # M at the midpoint is exact up to O(d^2)
    at_mid = _equal_frequency_integral((fa + fb) / 2, gamma)
    return np.where(near, at_mid, arctan_part + log_part)


def lorentz_cross_integral(t: float, u: float, gamma: float) -> float:
    """
    Integral over [0, inf) of 1 / ((gamma^2 + (w - sqrt t)^2)(gamma^2 + (w - sqrt u)^2)):
    M(t) for (near-)equal arguments, L(t, u) otherwise. t and u are squared frequencies.
    """
    _check_gamma(gamma)
    if t < 0 or u < 0:
        raise ContractError(f"squared frequencies must be >= 0, got {t}, {u}")
    return float(_cross_integrals(np.array([math.sqrt(t)]), np.array([math.sqrt(u)]), gamma)[0, 0])


def _density_terms(spec: LaplacianSpectrum, gamma: float) -> Tuple[np.ndarray, np.ndarray]:
    """Distinct frequencies and the kernel coefficient K * gamma * multiplicity of each."""
    freqs, counts = np.unique(spec.frequencies[1:], return_counts=True)
    k_norm = 1.0 / float(np.sum(counts * (np.pi / 2 + np.arctan(freqs / gamma))))
    return freqs, k_norm * gamma * counts


def _merge_terms(freqs: np.ndarray, coeffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(freqs, kind="stable")
    f, c = freqs[order], coeffs[order]
    starts = np.concatenate([[True], np.diff(f) > MERGE_TOLERANCE * (1.0 + f[:-1])])
    groups = np.cumsum(starts) - 1
    return f[starts], np.bincount(groups, weights=c)


def _precedes(first: LaplacianSpectrum, second: LaplacianSpectrum) -> bool:
    """Lexicographic order on eigenvalue vectors."""
    diff = np.flatnonzero(first.eigenvalues != second.eigenvalues)
    return bool(diff.size) and first.eigenvalues[diff[0]] < second.eigenvalues[diff[0]]


def epsilon_gamma(spec1: LaplacianSpectrum, spec2: LaplacianSpectrum, gamma: float) -> float:
    """
    sqrt of the integral of (rho_1 - rho_2)^2 over [0, inf), in closed form.

    Both densities are written as sums of kernels c_k / (gamma^2 + (w - w_k)^2);
    coinciding frequencies are merged first, so isospectral pairs cancel
    term by term instead of through a difference of large sums.
    """
    if spec1.n != spec2.n:
        raise ContractError(f"spectrum size mismatch: {spec1.n} vs {spec2.n}")
    _check_gamma(gamma)
    if spec1.n < 2:
        return 0.0
    if _precedes(spec2, spec1):
        # fixed argument order makes eps(a, b) == eps(b, a) bit for bit
        spec1, spec2 = spec2, spec1

    f1, c1 = _density_terms(spec1, gamma)
    f2, c2 = _density_terms(spec2, gamma)
    freqs, coeffs = _merge_terms(np.concatenate([f1, f2]), np.concatenate([c1, -c2]))
    eps_sq = float(coeffs @ _cross_integrals(freqs, freqs, gamma) @ coeffs)
    return math.sqrt(max(eps_sq, 0.0))


def _integrate_peaked(fn, peaks: np.ndarray, gamma: float) -> float:
    peaks = np.unique(peaks)
    upper = float(peaks.max()) + 200 * gamma
    inner_points = peaks[(peaks > 0) & (peaks < upper)]
    inner, _ = quad(fn, 0.0, upper, points=inner_points if len(inner_points) else None,
                    limit=2000, epsabs=1e-14, epsrel=1e-12)
    tail, _ = quad(fn, upper, np.inf, limit=500, epsabs=1e-15)
    return inner + tail


def epsilon_gamma_quadrature(spec1: LaplacianSpectrum, spec2: LaplacianSpectrum, gamma: float) -> float:
    """eps_gamma by adaptive quadrature of (rho_1 - rho_2)^2; reference for the closed form."""
    if spec1.n != spec2.n:
        raise ContractError(f"spectrum size mismatch: {spec1.n} vs {spec2.n}")
    rho1 = lorentz_density(spec1, gamma)
    rho2 = lorentz_density(spec2, gamma)

    def squared_gap(w: float) -> float:
        return float((rho1(w) - rho2(w)) ** 2)

    peaks = np.concatenate([rho1.frequencies, rho2.frequencies])
    return math.sqrt(max(_integrate_peaked(squared_gap, peaks, gamma), 0.0))


# ---------------------------------------------------------------------------
# Normalizing widths
# ---------------------------------------------------------------------------

def extremal_epsilon(n: int, gamma: float, directed: bool = False) -> float:
    """eps_gamma between the empty and complete graph (or their bipartite doubles)."""
    return epsilon_gamma(extremal_spectrum(n, False, directed), extremal_spectrum(n, True, directed), gamma)


def extremal_epsilon_undirected(n: int, gamma: float) -> float:
    """eps_gamma(E_N, F_N) from the expanded A^2 + B^2 - 2AB integrals."""
    if n < 2:
        raise ContractError(f"n must be >= 2, got {n}")
    _check_gamma(gamma)
    root_n = math.sqrt(n)
    s = math.pi / 2 + math.atan(root_n / gamma)

    a_sq = 1.0 / (math.pi * gamma)
    b_sq = (math.pi / 2 + gamma * root_n / (gamma ** 2 + n) + math.atan(root_n / gamma)) / (2 * gamma * s * s)
    cross = -4 * gamma / (s * math.pi * (4 * gamma ** 2 + n)) * (
        math.pi + (gamma / root_n) * math.log((gamma ** 2 + n) / gamma ** 2) + math.atan(root_n / gamma)
    )
    return math.sqrt(max(a_sq + b_sq + cross, 0.0))


def extremal_epsilon_directed(n: int, gamma: float) -> float:
    """eps_gamma between the bipartite doubles of the empty and full directed graphs, via Z, W, W'."""
    if n < 3:
        raise ContractError(f"the expanded form needs n >= 3, got {n}")
    _check_gamma(gamma)
    s = ((2 * n - 1) * math.pi / 2
         + (n - 1) * (math.atan(math.sqrt(n - 2) / gamma) + math.atan(math.sqrt(n) / gamma))
         + math.atan(math.sqrt(2 * n - 2) / gamma))
    z = 2 * gamma / math.pi
    w = gamma * (n - 1) / s
    w1 = w / (n - 1)

    def m(t):
        return lorentz_cross_integral(t, t, gamma)

    def l(t, u):
        return lorentz_cross_integral(t, u, gamma)

    eps_sq = (z * z * m(0) + w * w * m(n - 2) + w * w * m(n) + w1 * w1 * m(2 * n - 2)
              - 2 * z * w * l(0, n - 2) - 2 * z * w * l(0, n) - 2 * z * w1 * l(0, 2 * n - 2)
              + 2 * w * w * l(n - 2, n) + 2 * w * w1 * l(n - 2, 2 * n - 2) + 2 * w * w1 * l(n, 2 * n - 2))
    return math.sqrt(max(eps_sq, 0.0))


@lru_cache(maxsize=None)
def _solve_gamma(n: int, directed: bool) -> float:
    def objective(gamma: float) -> float:
        return extremal_epsilon(n, gamma, directed) - 1.0

    lo = BRACKET_START
    if objective(lo) <= 0:
        raise NumericalError(f"no root bracket for n={n}: f({lo}) <= 0")
    hi = lo
    for _ in range(MAX_BRACKET_DOUBLINGS):
        hi = 2 * lo
        if objective(hi) < 0:
            break
        lo = hi
    else:
        raise NumericalError(f"no root bracket for n={n} below gamma={hi}")

    root = brentq(objective, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    residual = abs(objective(root))
    if residual >= ROOT_TOLERANCE:
        raise NumericalError(f"gamma-bar residual {residual:.2e} for n={n} exceeds {ROOT_TOLERANCE}")

    logger.debug(f"gamma_bar(n={n}, directed={directed}) = {root:.10f}")
    return root


def gamma_bar(n: int) -> GammaBar:
    """Width making eps(E_N, F_N) = 1; cached per n."""
    if n < 2:
        raise ContractError(f"gamma_bar needs n >= 2, got {n}")
    return GammaBar(n, _solve_gamma(n, False), False)


def gamma_bar_directed(n: int) -> GammaBar:
    """Width making eps between the bipartite doubles of the directed extremes = 1."""
    if n < 2:
        raise ContractError(f"gamma_bar_directed needs n >= 2, got {n}")
    return GammaBar(n, _solve_gamma(n, True), True)


# ---------------------------------------------------------------------------
# Ipsen-Mikhailov distance
# ---------------------------------------------------------------------------

def im_from_spectra(spec1: LaplacianSpectrum, spec2: LaplacianSpectrum) -> float:
    """IM between two prepared spectra (bipartite-double spectra for directed graphs)."""
    if spec1.n != spec2.n or spec1.source_directed != spec2.source_directed:
        raise ContractError("spectra come from incompatible graphs")
    n = spec1.original_n
    if n < 2:
        return 0.0
    width = gamma_bar_directed(n) if spec1.source_directed else gamma_bar(n)
    return epsilon_gamma(spec1, spec2, width.value)


def im_distance(g1: Graph, g2: Graph) -> float:
    """Normalized Ipsen-Mikhailov distance, in [0, 1] up to solver tolerance."""
    check_compatible(g1, g2)
    if g1.n < 2:
        logger.warning("IM between 1-node graphs is defined as 0")
        return 0.0
    return im_from_spectra(graph_spectrum(g1), graph_spectrum(g2))


@register_measure
class IpsenMikhailovMeasure(GraphMeasure):
    name = "im"

    def prepare(self, graph: Graph) -> LaplacianSpectrum:
        return graph_spectrum(graph)

    def between(self, first: LaplacianSpectrum, second: LaplacianSpectrum) -> float:
        return im_from_spectra(first, second)
