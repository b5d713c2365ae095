"""End-to-end clustering pipelines.

The main path: exponentiate the stored edge-dependent weights, build the
capped splitting functions, derive missing hyperedge and vertex weights, run
the inverse power method from the configured initialization (plus optional
random restarts, keeping the best final objective), and threshold the
eigenvector estimate at the best normalized Cheeger cut.
"""

from __future__ import annotations

import time

import numpy as np

from .baseline import baseline_eigenvector
from .config import RunConfig
from .errors import ContractError
from .hypergraph import RawHypergraph, SubmodularHypergraph, derive_weights, power_gamma
from .ipm import (
    IpmResult,
    centered_indicator,
    inverse_power_method,
    threshold_partition,
)
from .reduction import reduce_to_digraph
from .report import ClusteringReport, clustering_error
from .splitting import ALL_OR_NOTHING, SplittingSpec

_FLAT_EPS = 1e-12


def prepare_hypergraph(raw: RawHypergraph, config: RunConfig) -> SubmodularHypergraph:
    """Apply the weight exponent and finalize under the configured splitting."""
    spec = (
        SplittingSpec(ALL_OR_NOTHING)
        if config.splitting == ALL_OR_NOTHING
        else SplittingSpec(config.splitting, beta=config.beta)
    )
    powered = power_gamma(raw, config.alpha, quantize=True)
    h = derive_weights(powered, spec)
    if not h.base.is_connected:
        raise ContractError("clustering requires a connected hypergraph")
    return h


def _random_start(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        x = rng.standard_normal(n)
        if np.max(x) - np.min(x) > _FLAT_EPS:
            return x


def cluster_hypergraph(
    raw: RawHypergraph,
    config: RunConfig,
    labels: np.ndarray | None = None,
) -> ClusteringReport:
    """Run the full 1-Laplacian clustering pipeline on a raw hypergraph."""
    start = time.perf_counter()
    h = prepare_hypergraph(raw, config)
    n = h.num_vertices
    mu = h.vertex_weights
    digraph = reduce_to_digraph(h)
    notes: list[str] = []

    starts: list[np.ndarray] = []
    if config.init == "rw":
        embedding = baseline_eigenvector(h.base, seed=config.seed)
        if embedding.ill_defined:
            notes.append("baseline eigenvector ill-defined (degenerate geometry)")
        if np.max(embedding.vector) - np.min(embedding.vector) > _FLAT_EPS:
            starts.append(embedding.vector)
        else:
            notes.append("baseline eigenvector is constant; falling back to random init")
    elif config.init == "indicator":
        starts.append(centered_indicator(config.indicator, n, mu))
    rng = np.random.default_rng(config.seed)
    extra = config.restarts if starts else max(config.restarts, 1)
    if config.init == "random":
        extra = max(config.restarts, 1)
    for _ in range(extra):
        starts.append(_random_start(rng, n))

    best: IpmResult | None = None
    for x0 in starts:
        result = inverse_power_method(
            h,
            x0,
            epsilon=config.epsilon,
            solver=config.solver,
            inner_tol=config.inner_tol,
            inner_max_iter=config.inner_max_iter,
            max_outer_iter=config.max_outer_iter,
            digraph=digraph,
        )
        if best is None or result.value < best.value:
            best = result
    if best.degenerate:
        notes.append("inner problem degenerated; returning the last stable iterate")

    partition = threshold_partition(h, best.x)
    error = clustering_error(partition.side_a, labels) if labels is not None else None
    wall_ms = (time.perf_counter() - start) * 1000.0
    return ClusteringReport(
        partition=partition,
        ncc=partition.ncc,
        error=error,
        lambda_trace=best.trace,
        iterations=best.iterations,
        wall_ms=wall_ms,
        config=config,
        eigenvector=best.x,
        degenerate=best.degenerate,
        notes=tuple(notes),
    )


def baseline_cluster(
    raw: RawHypergraph,
    config: RunConfig,
    labels: np.ndarray | None = None,
) -> ClusteringReport:
    """Random-walk 2-Laplacian baseline, thresholded at the best NCC."""
    start = time.perf_counter()
    h = prepare_hypergraph(raw, config)
    embedding = baseline_eigenvector(h.base, seed=config.seed)
    notes: list[str] = []
    if embedding.ill_defined:
        notes.append("baseline eigenvector ill-defined (degenerate geometry)")
    partition = threshold_partition(h, embedding.vector)
    error = clustering_error(partition.side_a, labels) if labels is not None else None
    wall_ms = (time.perf_counter() - start) * 1000.0
    return ClusteringReport(
        partition=partition,
        ncc=partition.ncc,
        error=error,
        lambda_trace=(),
        iterations=0,
        wall_ms=wall_ms,
        config=config,
        eigenvector=embedding.vector,
        degenerate=embedding.ill_defined,
        notes=tuple(notes),
    )


def sweep_cells(
    alphas: list[float], betas: list[float]
) -> list[tuple[float, float]]:
    return [(a, b) for a in alphas for b in betas]


def run_sweep(
    raw: RawHypergraph,
    config: RunConfig,
    alphas: list[float],
    betas: list[float],
    labels: np.ndarray | None = None,
    on_report=None,
    workers: int = 1,
) -> list[ClusteringReport]:
    """One clustering run per (alpha, beta) grid cell.

    Cells are independent; with more than one worker they run in a thread
    pool but reports are delivered in grid order either way.
    """
    cells = sweep_cells(alphas, betas)
    configs = [config.replace(alpha=a, beta=b) for a, b in cells]

    def run(cfg: RunConfig) -> ClusteringReport:
        return cluster_hypergraph(raw, cfg, labels)

    if workers <= 1:
        reports = []
        for cfg in configs:
            report = run(cfg)
            reports.append(report)
            if on_report is not None:
                on_report(report)
        return reports

    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(run, configs))
    if on_report is not None:
        for report in reports:
            on_report(report)
    return reports
