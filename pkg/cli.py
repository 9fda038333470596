"""
netdist command line
File-in / CSV-out front end for HIM distances, kernels and experiments.

Exit codes: 0 success, 2 input/parse error, 3 contract violation,
4 numerical failure. Results go to stdout or --out; diagnostics to stderr.
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional
import logging

from dotenv import load_dotenv

from engine.distance_engine import DistanceEngine
from engine.family_scan import family_block_statistics, family_collection, family_scan
from engine.mds import classical_mds
from engine.report_writer import (
    read_distance_matrix, write_block_statistics, write_distance_matrix, write_embedding,
    write_family_scan, write_gram_matrix, write_mean_trace, write_scatter, write_trace,
)
from engine.scatter import mcc_him_scatter, scatter_correlations
from engine.simulation import START_GRAPHS, evolve, evolve_batch, mean_trace, start_graph
from engine.small_graphs import enumerate_small, isomorphism_classes
from graphs.families import MODELS
from graphs.graph_io import read_collection, read_graph, write_adjacency_csv
from metrics.him_metric import MEASURES, him_distance
from metrics.mcc import mcc
from metrics.spectral import gamma_bar, gamma_bar_directed
from processes.base_process import process_kinds
from utils.config_loader import get_config_loader
from utils.errors import ContractError, NetDistError
from utils.logger import setup_logging
from utils.parallel import spawn_seeds

logger = logging.getLogger("netdist.cli")


def _progress(message: str, pct: int) -> None:
    logger.info(f"[{pct:3d}%] {message}")


def _xi(args, settings) -> float:
    return settings["distance"]["xi"] if args.xi is None else args.xi


def _engine(args) -> DistanceEngine:
    return DistanceEngine(get_config_loader().resolve_threads(args.threads), _progress)


def cmd_dist(args, settings) -> Dict[str, Any]:
    g1 = read_graph(args.a, args.directed)
    g2 = read_graph(args.b, args.directed)
    if g1.n != g2.n:
        raise ContractError(f"vertex count mismatch: {args.a} has {g1.n}, {args.b} has {g2.n}")
    if g1.n == 1:
        logger.warning("Hamming distance is undefined between 1-node graphs")
        raise ContractError("cannot compare 1-node graphs")
    report = him_distance(g1, g2, _xi(args, settings))
    print(f"H={report.h:.7f} IM={report.im:.7f} HIM={report.him:.7f}")
    return report.as_dict()


def cmd_matrix(args, settings) -> Dict[str, Any]:
    collection = read_collection(args.input, args.directed)
    matrix = _engine(args).distance_matrix(collection, args.measure, _xi(args, settings))
    write_distance_matrix(matrix, args.out)
    return {"out": args.out, "graphs": len(collection)}


def cmd_gram(args, settings) -> Dict[str, Any]:
    collection = read_collection(args.input, args.directed)
    kernel_gamma = settings["kernel"]["kernel_gamma"] if args.kernel_gamma is None else args.kernel_gamma
    gram = _engine(args).gram_matrix(collection, kernel_gamma, _xi(args, settings),
                                     settings["kernel"]["psd_tolerance"])
    write_gram_matrix(gram, args.out)
    return {"out": args.out, "min_eigenvalue": gram.min_eigenvalue, "psd": gram.psd}


def cmd_gamma(args, settings) -> Dict[str, Any]:
    width = gamma_bar_directed(args.n) if args.directed else gamma_bar(args.n)
    print(f"{width.value:.7f}")
    return {"gamma_bar": width.value}


def cmd_simulate(args, settings) -> Dict[str, Any]:
    # the start graph and the process draw from separate child streams
    start_seed, process_seed = spawn_seeds(args.seed, 2)
    family_params = {key: getattr(args, key) for key in ("power", "m", "exponent", "edges")
                     if getattr(args, key) is not None}
    start = start_graph(args.start, args.n, args.p, start_seed, family_params)
    xi = _xi(args, settings)
    if args.runs == 1:
        trace = evolve(start, args.process, args.steps, process_seed, xi)
        write_trace(trace, args.out)
        final = trace.final()
        return {"out": args.out, "steps": final.step, "final": [final.h, final.im, final.him]}

    threads = get_config_loader().resolve_threads(args.threads)
    traces = evolve_batch(start, args.process, args.steps, args.runs, process_seed, xi, threads, _progress)
    write_mean_trace(mean_trace(traces), args.out)
    return {"out": args.out, "runs": args.runs, "steps": len(traces[0]) - 1}


def cmd_family(args, settings) -> Dict[str, Any]:
    xi = _xi(args, settings)
    if args.mutual:
        collection, groups = family_collection(args.model, args.n, args.count, args.seed)
        matrix = _engine(args).distance_matrix(collection, "him", xi)
        write_distance_matrix(matrix, args.out)
        if args.blocks:
            write_block_statistics(family_block_statistics(matrix, groups), args.blocks)
        return {"out": args.out, "graphs": len(collection)}

    if len(args.model) != 1:
        raise ContractError("a distance-from-empty scan takes a single --model; use --mutual for several")
    threads = get_config_loader().resolve_threads(args.threads)
    scan = family_scan(args.model[0], args.n, args.count, args.seed, xi=xi,
                       threads=threads, progress_callback=_progress)
    write_family_scan(scan, args.out)
    return {"out": args.out, **scan.summary()}


def cmd_mds(args, settings) -> Dict[str, Any]:
    embedding = classical_mds(read_distance_matrix(args.input), args.dim)
    write_embedding(embedding, args.out)
    return {"out": args.out, "stress": embedding.stress}


def cmd_mcc(args, settings) -> Dict[str, Any]:
    g1 = read_graph(args.a, args.directed)
    g2 = read_graph(args.b, args.directed)
    if g1.n != g2.n:
        raise ContractError(f"vertex count mismatch: {args.a} has {g1.n}, {args.b} has {g2.n}")
    value = mcc(g1, g2)
    print(f"MCC={value:.7f} DISSIM={(1 - value) / 2:.7f}")
    return {"mcc": value}


def cmd_enumerate(args, settings) -> Dict[str, Any]:
    collection = enumerate_small(args.n)
    classes = isomorphism_classes(collection)
    print(f"n={args.n} graphs={len(collection)} classes={len(classes)}")

    if args.out:
        class_of = {k: c for c, members in enumerate(classes) for k in members}
        lines = ["label,mask,class,edges"]
        lines += [f"{collection.labels[k]},{k},{class_of[k]},{g.edge_count}" for k, g in enumerate(collection)]
        Path(args.out).write_text("\n".join(lines) + "\n")
    if args.export_dir:
        export = Path(args.export_dir)
        export.mkdir(parents=True, exist_ok=True)
        for label, g in zip(collection.labels, collection):
            write_adjacency_csv(g, export / f"{label}.csv")
    return {"graphs": len(collection), "classes": len(classes)}


def cmd_scatter(args, settings) -> Dict[str, Any]:
    threads = get_config_loader().resolve_threads(args.threads)
    size_range = None
    if args.size_min is not None or args.size_max is not None:
        scatter_cfg = settings["scatter"]
        size_range = (args.size_min or scatter_cfg["size_min"], args.size_max or scatter_cfg["size_max"])
    rows = mcc_him_scatter(args.count, size_range, args.seed, _xi(args, settings),
                           threads=threads, progress_callback=_progress)
    correlations = scatter_correlations(rows) if len(rows) > 1 else {}
    write_scatter(rows, args.out, correlations)
    return {"out": args.out, **{f"pearson_{k}": v for k, v in correlations.items()}}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: NETDIST_THREADS, then config, then cpu count)")
    common.add_argument("--log-dir", default=None, help="directory for log files and the run ledger")
    common.add_argument("--log-level", default=None, help="console log level (default from config)")

    parser = argparse.ArgumentParser(prog="netdist", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("dist", cmd_dist, "H, IM and HIM between two graph files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--directed", action="store_true")

    p = add("matrix", cmd_matrix, "pairwise distance matrix of a collection")
    p.add_argument("--input", nargs="+", required=True, help="graph files and/or directories")
    p.add_argument("--measure", choices=MEASURES, default="him")
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--out", required=True)

    p = add("gram", cmd_gram, "HIM kernel Gram matrix with PSD check")
    p.add_argument("--input", nargs="+", required=True)
    p.add_argument("--kernel-gamma", type=float, default=None)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--out", required=True)

    p = add("gamma", cmd_gamma, "normalizing Lorentz width for n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--directed", action="store_true")

    p = add("simulate", cmd_simulate, "distance trace of an edge-evolution process")
    p.add_argument("--process", choices=process_kinds(), type=str.upper, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", choices=START_GRAPHS, default="empty")
    p.add_argument("--p", type=float, default=0.5, help="link probability of an er start")
    p.add_argument("--power", type=float, default=None, help="attachment power of a ba start (default 1)")
    p.add_argument("--m", type=int, default=None, help="links per new vertex of a ba start (default 1)")
    p.add_argument("--exponent", type=float, default=None, help="degree exponent of a pl start (default 2.3)")
    p.add_argument("--edges", type=int, default=None, help="link count of a pl start (default n-1)")
    p.add_argument("--steps", type=int, default=None, help="default: the full process")
    p.add_argument("--runs", type=int, default=1, help="more than 1 writes the step-wise mean")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--out", required=True)

    p = add("family", cmd_family, "random family samples measured from the empty graph")
    p.add_argument("--model", nargs="+", choices=MODELS, type=str.upper, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--mutual", action="store_true", help="mutual HIM matrix of all samples instead")
    p.add_argument("--blocks", default=None, help="with --mutual: within/between family statistics CSV")
    p.add_argument("--out", required=True)

    p = add("mds", cmd_mds, "classical MDS of a distance matrix CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--out", required=True)

    p = add("mcc", cmd_mcc, "Matthews correlation between two unweighted graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--directed", action="store_true")

    p = add("enumerate", cmd_enumerate, "all graphs on n <= 6 vertices and their isomorphism classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None, help="label,mask,class,edges CSV")
    p.add_argument("--export-dir", default=None, help="write one adjacency CSV per graph")

    p = add("scatter", cmd_scatter, "(1 - MCC)/2 against H, IM and HIM on random pairs")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--size-min", type=int, default=None)
    p.add_argument("--size-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--out", required=True)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    settings = get_config_loader().load_settings()
    runtime = settings["runtime"]
    run_logger = setup_logging(args.log_level or runtime["log_level"], args.log_dir or runtime["log_dir"])

    started = time.time()
    outputs: Dict[str, Any] = {}
    try:
        outputs = args.handler(args, settings) or {}
        exit_code = 0
    except NetDistError as e:
        print(f"netdist {args.command}: {e}", file=sys.stderr)
        exit_code = e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.command}")
        print(f"netdist {args.command}: internal error: {e}", file=sys.stderr)
        exit_code = 4

    if run_logger is not None:
        params = {k: v for k, v in vars(args).items() if k != "handler"}
        run_logger.log_run(args.command, params, outputs, time.time() - started, exit_code)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
