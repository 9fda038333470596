"""
Graph Families
Random simple undirected unweighted graphs from five models:
BA  nonlinear preferential attachment (attachment power alpha, m links per new vertex)
ER  Erdos-Renyi G(n, p)
WS  Watts-Strogatz small world (lattice radius nei, rewiring probability p)
PL  static-fitness scale-free graphs (degree exponent, edge count)
KR  random d-regular graphs

Parameters not supplied are drawn uniformly from the ranges in
config/netdist.yaml using the sample's own random stream.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional
import numpy as np
import networkx as nx
import logging

from graphs.graph_model import Graph, from_networkx
from utils.config_loader import get_config_loader
from utils.errors import ContractError
from utils.parallel import SeedLike, make_rng, networkx_seed

logger = logging.getLogger(__name__)

MODELS = ("BA", "ER", "WS", "PL", "KR")


@dataclass(frozen=True, eq=False)
class FamilySample:
    model: str
    n: int
    params: Dict[str, Any]
    seed: Any
    graph: Graph = field(repr=False)


def _check_probability(name: str, p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ContractError(f"{name} must lie in [0, 1], got {p}")
    return p


def _barabasi_albert(n: int, params: Dict[str, Any], rng: np.random.Generator) -> Graph:
    """
    Grow from vertex 0; each new vertex t links to m distinct existing vertices
    chosen with probability proportional to degree^power + 1.
    """
    power = float(params["power"])
    m = int(params["m"])
    if power < 0 or m < 1:
        raise ContractError(f"BA needs power >= 0 and m >= 1, got power={power}, m={m}")

    w = np.zeros((n, n))
    degrees = np.zeros(n)
    for t in range(1, n):
        appeal = degrees[:t] ** power + 1.0
        targets = rng.choice(t, size=min(m, t), replace=False, p=appeal / appeal.sum())
        w[t, targets] = w[targets, t] = 1
        degrees[targets] += 1
        degrees[t] += len(targets)
    return Graph(w)


def _erdos_renyi(n: int, params: Dict[str, Any], rng: np.random.Generator) -> Graph:
    p = _check_probability("ER p", params["p"])
    return from_networkx(nx.gnp_random_graph(n, p, seed=networkx_seed(rng)), n)


def _watts_strogatz(n: int, params: Dict[str, Any], rng: np.random.Generator) -> Graph:
    nei = int(params["nei"])
    p = _check_probability("WS p", params["p"])
    if nei < 1:
        raise ContractError(f"WS lattice radius must be >= 1, got {nei}")
    if 2 * nei >= n - 1:
        # the ring lattice is already complete; nothing can be rewired
        return from_networkx(nx.complete_graph(n), n)
    return from_networkx(nx.watts_strogatz_graph(n, 2 * nei, p, seed=networkx_seed(rng)), n)


def _static_fitness(n: int, params: Dict[str, Any], rng: np.random.Generator) -> Graph:
    """
    Vertex i has fitness i^(-1/(exponent-1)); `edges` distinct pairs are drawn
    with probability proportional to the product of their fitnesses.
    """
    exponent = float(params["exponent"])
    edges = int(params["edges"])
    slots = n * (n - 1) // 2
    if exponent <= 2:
        raise ContractError(f"PL exponent must be > 2, got {exponent}")
    if not 0 <= edges <= slots:
        raise ContractError(f"PL edge count must lie in 0..{slots}, got {edges}")

    fitness = np.arange(1, n + 1, dtype=float) ** (-1.0 / (exponent - 1.0))
    rows, cols = np.triu_indices(n, k=1)
    weight = fitness[rows] * fitness[cols]
    chosen = rng.choice(slots, size=edges, replace=False, p=weight / weight.sum()) if edges else []

    w = np.zeros((n, n))
    w[rows[chosen], cols[chosen]] = 1
    w[cols[chosen], rows[chosen]] = 1
    return Graph(w)


def _random_regular(n: int, params: Dict[str, Any], rng: np.random.Generator) -> Graph:
    d = int(params["degree"])
    if not 0 <= d <= n - 1:
        raise ContractError(f"KR degree must lie in 0..{n - 1}, got {d}")
    if (n * d) % 2:
        raise ContractError(f"no {d}-regular graph on {n} vertices: n*d is odd")
    if d > (n - 1) / 2:
        # dense case: complement of a sparse regular graph
        sparse = nx.random_regular_graph(n - 1 - d, n, seed=networkx_seed(rng))
        return from_networkx(nx.complement(sparse), n)
    return from_networkx(nx.random_regular_graph(d, n, seed=networkx_seed(rng)), n)


_BUILDERS = {
    "BA": _barabasi_albert,
    "ER": _erdos_renyi,
    "WS": _watts_strogatz,
    "PL": _static_fitness,
    "KR": _random_regular,
}


def draw_params(model: str, n: int, rng: np.random.Generator,
                given: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Complete `given` with values drawn from the configured ranges."""
    ranges = get_config_loader().family_ranges(model)
    params = dict(given or {})

    if model == "BA":
        params.setdefault("power", rng.uniform(ranges["power_min"], ranges["power_max"]))
        params.setdefault("m", int(ranges.get("m", 1)))
    elif model == "ER":
        params.setdefault("p", rng.uniform(ranges["p_min"], ranges["p_max"]))
    elif model == "WS":
        params.setdefault("nei", int(rng.integers(ranges["nei_min"], ranges["nei_max"] + 1)))
        params.setdefault("p", rng.uniform(ranges["p_min"], ranges["p_max"]))
    elif model == "PL":
        params.setdefault("exponent", rng.uniform(ranges["exponent_min"], ranges["exponent_max"]))
        params.setdefault("edges", int(rng.integers(1, max(n * (n - 1) // 2, 1) + 1)))
    elif model == "KR":
        feasible = [d for d in range(n) if (n * d) % 2 == 0]
        params.setdefault("degree", int(rng.choice(feasible)))
    return {k: (float(v) if isinstance(v, (float, np.floating)) else v) for k, v in params.items()}


def sample_family(model: str, n: int, params: Optional[Dict[str, Any]] = None,
                  seed: SeedLike = None) -> FamilySample:
    """
    One graph from a family model.

    Args:
        model: BA, ER, WS, PL or KR
        n: vertex count (>= 1)
        params: model parameters; missing ones are drawn from configured ranges
        seed: int seed or spawned SeedSequence

    Returns:
        FamilySample holding the graph and the parameters actually used
    """
    model = model.upper()
    if model not in _BUILDERS:
        raise ContractError(f"unknown graph family {model!r}; choose from {', '.join(MODELS)}")
    if n < 1:
        raise ContractError(f"vertex count must be >= 1, got {n}")

    rng = make_rng(seed)
    full_params = draw_params(model, n, rng, params)
    graph = _BUILDERS[model](n, full_params, rng)
    logger.debug(f"Sampled {model}(n={n}, {full_params}) with {graph.edge_count} edges")
    return FamilySample(model, n, full_params, seed, graph)
