"""Oracle verification suite behind the ``verify`` CLI subcommand.

Runs the exhaustive desk-scale checks on randomly generated instances and
reports the worst violation per check, so tolerance regressions stay visible
instead of collapsing into a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baseline import (
    edge_kappa_totals,
    random_walk_adjacency,
    random_walk_cut,
    random_walk_splitting_penalty,
    stationary_distribution,
    transition_matrix,
)
from .constants import SET_FN_ATOL
from .hypergraph import SubmodularHypergraph, dirichlet_energy, lovasz_extension
from .oracles import (
    DEFAULT_BUDGET,
    OracleBudget,
    brute_sfm,
    check_reduction_cut,
    minimize_extension_over_auxiliaries,
    reduced_set_value,
    sfm_via_prox,
)
from .reduction import reduce_to_digraph
from .solvers import DualPairing, lipschitz_bound
from .splitting import EDVW, SplittingSpec
from .synthetic import random_connected_hypergraph


@dataclass(frozen=True)
class CheckResult:
    name: str
    instances: int
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def _random_submodular(rng: np.random.Generator) -> SubmodularHypergraph:
    base = random_connected_hypergraph(rng)
    beta = float(rng.choice([0.2, 0.3, 0.5]))
    return SubmodularHypergraph(base, SplittingSpec(EDVW, beta=beta))


def check_reduction_identity(
    instances: int, seed: int, budget: OracleBudget = DEFAULT_BUDGET
) -> CheckResult:
    """Hypergraph cut equals the auxiliary-minimized digraph cut, every set."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        h = _random_submodular(rng)
        g = reduce_to_digraph(h)
        worst = max(worst, check_reduction_cut(h, g, budget).max_violation)
    return CheckResult("reduction cut identity", instances, worst, SET_FN_ATOL)


def check_extension_identity(
    instances: int, seed: int, points_per_instance: int = 20,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> CheckResult:
    """Cut extension equals the digraph extension minimized over auxiliaries."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        h = _random_submodular(rng)
        g = reduce_to_digraph(h)
        for _ in range(points_per_instance):
            x = rng.standard_normal(h.num_vertices)
            lhs = dirichlet_energy(h, x, 1.0)
            rhs = minimize_extension_over_auxiliaries(g, x, budget)
            worst = max(worst, abs(lhs - rhs))
    return CheckResult("extension reduction identity", instances, worst, SET_FN_ATOL)


def check_lipschitz_bound(
    instances: int, seed: int, pairs_per_instance: int = 1000
) -> CheckResult:
    """Dual gradient changes are bounded by the closed-form constant."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        h = _random_submodular(rng)
        g = reduce_to_digraph(h)
        pairing = DualPairing.from_digraph(g)
        bound = lipschitz_bound(g)
        gt = np.concatenate(
            [rng.standard_normal(h.num_vertices), np.zeros(g.num_auxiliary)]
        )
        a = rng.uniform(0.0, 1.0, size=(pairs_per_instance, pairing.m))
        b = rng.uniform(0.0, 1.0, size=(pairs_per_instance, pairing.m))
        for ai, bi in zip(a, b):
            lhs = float(
                np.linalg.norm(pairing.dual_gradient(ai, gt) - pairing.dual_gradient(bi, gt))
            )
            rhs = bound * float(np.linalg.norm(ai - bi))
            worst = max(worst, lhs - rhs)
    return CheckResult("dual gradient Lipschitz bound", instances, worst, 1e-9)


def check_random_walk_bridge(
    instances: int, seed: int, points_per_instance: int = 20
) -> CheckResult:
    """Walk-induced hypergraph cuts and extensions match the symmetrized graph."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        h = _random_submodular(rng).base
        p = transition_matrix(h)
        pi = stationary_distribution(p)
        adj = random_walk_adjacency(p, pi)
        n = h.num_vertices
        for mask in range(1 << n):
            subset = [v for v in range(n) if mask >> v & 1]
            inside = np.zeros(n, dtype=bool)
            inside[subset] = True
            graph_cut = float(adj[np.ix_(inside, ~inside)].sum())
            worst = max(worst, abs(random_walk_cut(h, pi, subset) - graph_cut))
        totals = edge_kappa_totals(h)
        for _ in range(points_per_instance):
            x = rng.standard_normal(n)
            diff = x[:, None] - x[None, :]
            graph_ext = float(np.sum(adj * np.maximum(diff, 0.0)))
            hyper_ext = sum(
                lovasz_extension(
                    lambda s, j=j: random_walk_splitting_penalty(h, j, pi, s, totals),
                    x,
                )
                for j in range(len(h.hyperedges))
            )
            worst = max(worst, abs(hyper_ext - graph_ext))
    return CheckResult("random walk bridge", instances, worst, SET_FN_ATOL)


def check_sfm_equivalence(
    instances: int, seed: int, budget: OracleBudget = DEFAULT_BUDGET
) -> CheckResult:
    """Proximal thresholding reaches the exhaustive submodular minimum."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        h = _random_submodular(rng)
        g = reduce_to_digraph(h)
        gt = np.concatenate(
            [rng.uniform(-2.0, 2.0, size=h.num_vertices), np.zeros(g.num_auxiliary)]
        )
        prox = sfm_via_prox(g, gt, budget)
        brute = brute_sfm(
            lambda s: reduced_set_value(g, s, gt, budget), h.num_vertices, budget
        )
        worst = max(worst, abs(prox.value - brute.value))
    return CheckResult("submodular minimization equivalence", instances, worst, 0.0)


def run_suite(budget_name: str = "small", seed: int = 0) -> list[CheckResult]:
    counts = {"small": 25, "full": 200}
    if budget_name not in counts:
        raise ValueError(f"unknown budget {budget_name!r}; pick one of {sorted(counts)}")
    n = counts[budget_name]
    small = max(n // 5, 5)
    return [
        check_reduction_identity(n, seed),
        check_extension_identity(small, seed + 1),
        check_lipschitz_bound(small, seed + 2, pairs_per_instance=200),
        check_random_walk_bridge(small, seed + 3),
        check_sfm_equivalence(small, seed + 4),
    ]


def format_table(results: list[CheckResult]) -> str:
    name_width = max(len(r.name) for r in results)
    lines = [
        f"{'check'.ljust(name_width)}  instances  max violation  tolerance  status"
    ]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.name.ljust(name_width)}  {r.instances:9d}  {r.max_violation:13.3e}"
            f"  {r.tolerance:9.0e}  {status}"
        )
    return "\n".join(lines)
