"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; every tolerance is fixed here, nothing is calibrated at runtime.
"""

import time

import numpy as np
import pytest

from hyperclust.baseline import (
    baseline_eigenvector,
    random_walk_adjacency,
    random_walk_cut,
    stationary_distribution,
    transition_matrix,
)
from hyperclust.cli import main
from hyperclust.config import RunConfig
from hyperclust.hgio import write_hypergraph_file
from hyperclust.hypergraph import SubmodularHypergraph, dirichlet_energy, ncc
from hyperclust.ipm import centered_indicator, inverse_power_method, threshold_partition
from hyperclust.oracles import (
    brute_cheeger,
    brute_sfm,
    check_reduction_cut,
    minimize_extension_over_auxiliaries,
    reduced_set_value,
    sfm_via_prox,
)
from hyperclust.pipeline import cluster_hypergraph
from hyperclust.reduction import reduce_to_digraph
from hyperclust.solvers import (
    DualPairing,
    lipschitz_bound,
    solve_inner_fista,
    solve_inner_pdhg,
)
from hyperclust.splitting import EDVW, SplittingSpec
from hyperclust.synthetic import planted_two_block, random_connected_hypergraph

BETAS = (0.2, 0.3, 0.5)


def random_suite_instance(rng):
    base = random_connected_hypergraph(
        rng, min_vertices=4, max_vertices=7, max_edges=3, max_edge_size=5
    )
    beta = float(rng.choice(BETAS))
    return SubmodularHypergraph(base, SplittingSpec(EDVW, beta=beta))


def report(line: str) -> None:
    print(f"\n{line}")


def test_criterion_1_reduction_identity():
    """Hypergraph cuts equal auxiliary-minimized digraph cuts, exhaustively."""
    rng = np.random.default_rng(101)
    start = time.monotonic()
    worst = 0.0
    for _ in range(200):
        h = random_suite_instance(rng)
        g = reduce_to_digraph(h)
        worst = max(worst, check_reduction_cut(h, g).max_violation)
    elapsed = time.monotonic() - start
    assert worst <= 1e-9
    assert elapsed < 30.0
    report(
        f"ACCEPTANCE 1 PASS reduction identity: max violation {worst:.2e} "
        f"over 200 hypergraphs in {elapsed:.1f}s"
    )


def test_criterion_2_extension_identity():
    """Cut extension equals the reduced extension minimized over auxiliaries."""
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(200):
        h = random_suite_instance(rng)
        g = reduce_to_digraph(h)
        for _ in range(20):
            x = rng.standard_normal(h.num_vertices)
            lhs = dirichlet_energy(h, x, 1.0)
            rhs = minimize_extension_over_auxiliaries(g, x)
            worst = max(worst, abs(lhs - rhs))
    assert worst <= 1e-9
    report(f"ACCEPTANCE 2 PASS extension identity: max violation {worst:.2e}")


def test_criterion_3_eigenvalue_equals_cheeger():
    """The outer loop reaches the exhaustive Cheeger constant."""
    rng = np.random.default_rng(2024)
    indicator_hits = 0
    multistart_hits = 0
    total = 50
    for i in range(total):
        base = random_connected_hypergraph(rng, min_vertices=4, max_vertices=8)
        h = SubmodularHypergraph(
            base, SplittingSpec(EDVW, beta=float(rng.choice(BETAS)))
        )
        best = brute_cheeger(h)
        mu = h.vertex_weights
        x0 = centered_indicator(best.subset, h.num_vertices, mu)
        res = inverse_power_method(h, x0, epsilon=1e-6)
        indicator_hits += abs(res.value - best.value) <= 1e-6

        starts = []
        embedding = baseline_eigenvector(h.base)
        if np.ptp(embedding.vector) > 1e-12:
            starts.append(embedding.vector)
        restart_rng = np.random.default_rng(1000 + i)
        starts.extend(restart_rng.standard_normal(h.num_vertices) for _ in range(10))
        reached = min(
            inverse_power_method(h, x0, epsilon=1e-6).value for x0 in starts
        )
        multistart_hits += abs(reached - best.value) <= 1e-6
    assert indicator_hits == total
    assert multistart_hits >= 0.9 * total
    report(
        f"ACCEPTANCE 3 PASS eigenvalue = Cheeger constant: indicator init "
        f"{indicator_hits}/{total}, multistart {multistart_hits}/{total}"
    )


def test_criterion_4_monotone_traces_and_partition_improvement():
    """Objective traces never increase; indicator inits never end worse."""
    rng = np.random.default_rng(104)
    runs = 0
    for _ in range(25):
        h = random_suite_instance(rng)
        n = h.num_vertices
        solver = "fista" if runs % 2 else "pdhg"
        subset = [v for v in range(n) if rng.random() < 0.5] or [0]
        if len(subset) == n:
            subset = subset[:-1]
        inits = [
            rng.standard_normal(n),
            centered_indicator(subset, n, h.vertex_weights),
        ]
        for x0 in inits:
            if np.ptp(x0) < 1e-12:
                continue
            result = inverse_power_method(h, x0, epsilon=1e-6, solver=solver)
            trace = np.asarray(result.trace)
            assert np.all(np.diff(trace) <= 1e-10)
            runs += 1
        part = threshold_partition(h, inverse_power_method(
            h, centered_indicator(subset, n, h.vertex_weights), epsilon=1e-6
        ).x)
        assert part.ncc <= ncc(h, subset) + 1e-9
    report(f"ACCEPTANCE 4 PASS monotone traces over {runs} runs, indicator NCC bound")


def test_criterion_5_solver_cross_check():
    """The two inner solvers agree; the gradient bound is never violated."""
    rng = np.random.default_rng(105)
    compared = 0
    lipschitz_pairs = 0
    worst_disagreement = 0.0
    attempts = 0
    while compared < 100:
        attempts += 1
        assert attempts < 400, "too many degenerate instances drawn"
        h = random_suite_instance(rng)
        g = reduce_to_digraph(h)
        gt = np.concatenate(
            [rng.uniform(-2.0, 2.0, size=h.num_vertices), np.zeros(g.num_auxiliary)]
        )
        bound = lipschitz_bound(g)
        fista = solve_inner_fista(g, gt, bound, tol=1e-14, max_iter=40000)
        pdhg = solve_inner_pdhg(g, gt, tol=1e-14, max_iter=40000)
        if fista.degenerate or np.linalg.norm(pdhg.y) < 1e-9:
            continue
        y1 = fista.y
        y2 = pdhg.y / np.linalg.norm(pdhg.y)
        if float(y1 @ y2) < 0:
            y2 = -y2
        disagreement = float(np.linalg.norm(y1 - y2))
        worst_disagreement = max(worst_disagreement, disagreement)
        assert disagreement <= 1e-4
        compared += 1

        pairing = DualPairing.from_digraph(g)
        a = rng.uniform(0, 1, size=(1000, pairing.m))
        b = rng.uniform(0, 1, size=(1000, pairing.m))
        for ai, bi in zip(a, b):
            lhs = np.linalg.norm(
                pairing.dual_gradient(ai, gt) - pairing.dual_gradient(bi, gt)
            )
            assert lhs <= bound * np.linalg.norm(ai - bi) + 1e-9
            lipschitz_pairs += 1
    report(
        f"ACCEPTANCE 5 PASS solver cross-check: {compared} problems, worst "
        f"l2 disagreement {worst_disagreement:.2e}; {lipschitz_pairs} gradient "
        f"pairs within the bound"
    )


def test_criterion_6_sfm_equivalence():
    """Proximal thresholding hits the exhaustive submodular minimum exactly."""
    rng = np.random.default_rng(106)
    for _ in range(50):
        base = random_connected_hypergraph(rng, min_vertices=4, max_vertices=8)
        h = SubmodularHypergraph(
            base, SplittingSpec(EDVW, beta=float(rng.choice(BETAS)))
        )
        g = reduce_to_digraph(h)
        gt = np.concatenate(
            [rng.uniform(-2.0, 2.0, size=h.num_vertices), np.zeros(g.num_auxiliary)]
        )
        prox = sfm_via_prox(g, gt)
        brute = brute_sfm(lambda s: reduced_set_value(g, s, gt), h.num_vertices)
        assert prox.value == brute.value
    report("ACCEPTANCE 6 PASS submodular minimization: 50/50 exact value matches")


def test_criterion_7_random_walk_bridge():
    """Walk-induced hypergraph cuts and extensions equal the graph's."""
    rng = np.random.default_rng(107)
    worst_cut = 0.0
    worst_ext = 0.0
    points = 0
    for _ in range(20):
        h = random_suite_instance(rng).base
        p = transition_matrix(h)
        pi = stationary_distribution(p)
        adj = random_walk_adjacency(p, pi)
        n = h.num_vertices
        for mask in range(1 << n):
            inside = np.array([(mask >> v) & 1 == 1 for v in range(n)])
            graph_cut = float(adj[np.ix_(inside, ~inside)].sum())
            subset = [v for v in range(n) if inside[v]]
            worst_cut = max(worst_cut, abs(random_walk_cut(h, pi, subset) - graph_cut))
        for _ in range(5):
            x = rng.standard_normal(n)
            graph_ext = float(np.sum(adj * np.maximum(x[:, None] - x[None, :], 0.0)))
            hyper_ext = _walk_extension(h, pi, x)
            worst_ext = max(worst_ext, abs(hyper_ext - graph_ext))
            points += 1
    assert worst_cut <= 1e-9
    assert worst_ext <= 1e-9
    assert points >= 100
    report(
        f"ACCEPTANCE 7 PASS random-walk bridge: cut violation {worst_cut:.2e}, "
        f"extension violation {worst_ext:.2e} over {points} points"
    )


def _walk_extension(h, pi, x):
    from hyperclust.baseline import edge_kappa_totals, random_walk_splitting_penalty
    from hyperclust.hypergraph import lovasz_extension

    totals = edge_kappa_totals(h)
    return sum(
        lovasz_extension(
            lambda s, j=j: random_walk_splitting_penalty(h, j, pi, s, totals), x
        )
        for j in range(len(h.hyperedges))
    )


def test_criterion_8_planted_two_block_clustering():
    """Weight-aware clustering recovers the planted blocks; ignoring the
    weights deteriorates both the error and the achieved NCC."""
    start = time.monotonic()
    error_hits = 0
    ncc_hits = 0
    seeds = 20
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        raw, labels = planted_two_block(rng)
        weighted = cluster_hypergraph(raw, RunConfig(alpha=1.0, beta=0.2, seed=seed), labels)
        counting = cluster_hypergraph(raw, RunConfig(alpha=0.0, beta=0.2, seed=seed), labels)
        error_hits += weighted.error <= 0.05
        ncc_hits += weighted.ncc <= counting.ncc
    elapsed = time.monotonic() - start
    assert error_hits >= 0.8 * seeds
    assert ncc_hits >= 0.8 * seeds
    assert elapsed < 120.0
    report(
        f"ACCEPTANCE 8 PASS planted blocks: error <= 5% on {error_hits}/{seeds} "
        f"seeds, weighted NCC <= counting NCC on {ncc_hits}/{seeds}, {elapsed:.0f}s"
    )


def test_criterion_9_byte_identical_reports(tmp_path):
    """Identical config and seed produce byte-identical report files."""
    rng = np.random.default_rng(9)
    raw, labels = planted_two_block(rng, block_size=10, num_edges=10)
    source = tmp_path / "toy.hg"
    write_hypergraph_file(source, raw, labels)
    contents = []
    for name in ("first", "second"):
        out = tmp_path / name
        code = main([
            "cluster", "--input", str(source), "--output-dir", str(out),
            "--beta", "0.2", "--solver", "pdhg", "--seed", "1",
        ])
        assert code == 0
        contents.append(
            ((out / "report.csv").read_bytes(), (out / "eigenvector.csv").read_bytes())
        )
    assert contents[0] == contents[1]
    report("ACCEPTANCE 9 PASS determinism: repeated runs byte-identical")
