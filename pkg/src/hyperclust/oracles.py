"""Budget-capped brute-force reference implementations.

Everything here is deliberately exponential: exhaustive Cheeger constants,
exhaustive verification of the digraph reduction, restricted enumeration of
the cut-extension minimum over auxiliary coordinates, and submodular
minimization by full enumeration or by thresholding a high-accuracy proximal
solve.  Budgets abort loudly instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Collection

import numpy as np

from .constants import THRESHOLD_ATOL
from .errors import BudgetExceededError, ContractError
from .hypergraph import SubmodularHypergraph, cut_weight, ncc
from .reduction import ReducedDigraph, digraph_cut, directed_total_variation
from .solvers import solve_inner_pdhg


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_auxiliary: int = 6
    max_pairs: int = 4
    max_assignments: int = 2_000_000
    grid_resolution: float = 1e-5


DEFAULT_BUDGET = OracleBudget()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BudgetExceededError(message)


@dataclass(frozen=True)
class CheegerResult:
    value: float
    subset: tuple[int, ...]


def brute_cheeger(h: SubmodularHypergraph, budget: OracleBudget = DEFAULT_BUDGET) -> CheegerResult:
    """Exhaustive minimum normalized Cheeger cut over all bipartitions.

    Each bipartition is represented by its side containing vertex 0; ties go
    to the lexicographically smallest side.
    """
    n = h.num_vertices
    _require(n <= budget.max_vertices, f"{n} vertices exceed the oracle budget")
    if n < 2:
        raise ContractError("a bipartition needs at least two vertices")
    best_value = np.inf
    best_set: tuple[int, ...] | None = None
    for mask in range(2 ** (n - 1)):
        subset = tuple([0] + [v for v in range(1, n) if mask >> (v - 1) & 1])
        if len(subset) == n:
            continue
        value = ncc(h, subset)
        if value < best_value or (value == best_value and subset < best_set):
            best_value = value
            best_set = subset
    return CheegerResult(float(best_value), best_set)


def cut_table(g: ReducedDigraph) -> np.ndarray:
    """Digraph cut of every subset, indexed by bitmask (bit i = vertex i)."""
    n = g.num_vertices
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n)
    for t, head, w in zip(g.tails, g.heads, g.weights):
        inside_t = (masks >> int(t)) & 1
        inside_h = (masks >> int(head)) & 1
        table += w * (inside_t * (1 - inside_h))
    return table


@dataclass(frozen=True)
class ReductionReport:
    max_violation: float
    num_sets: int


def check_reduction_cut(
    h: SubmodularHypergraph, g: ReducedDigraph, budget: OracleBudget = DEFAULT_BUDGET
) -> ReductionReport:
    """Exhaustively verify that minimizing the digraph cut over auxiliary
    placements reproduces the hypergraph cut for every original subset.
    """
    n = h.num_vertices
    m = g.num_auxiliary
    _require(n <= budget.max_vertices, f"{n} vertices exceed the oracle budget")
    _require(m <= budget.max_auxiliary, f"{m} auxiliaries exceed the oracle budget")
    if g.num_original != n:
        raise ContractError("digraph and hypergraph disagree on the vertex count")
    table = cut_table(g)
    # full mask = original bits | auxiliary bits << n
    min_over_aux = table.reshape(1 << m, 1 << n).min(axis=0)
    worst = 0.0
    for mask in range(1 << n):
        subset = [v for v in range(n) if mask >> v & 1]
        violation = abs(cut_weight(h, subset) - min_over_aux[mask])
        worst = max(worst, violation)
    return ReductionReport(worst, 1 << n)


def _auxiliary_components(g: ReducedDigraph) -> list[list[int]]:
    # Auxiliary vertices interact only through arcs joining two auxiliaries.
    n = g.num_original
    m = g.num_auxiliary
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for t, head in zip(g.tails, g.heads):
        if t >= n and head >= n:
            a, b = find(int(t) - n), find(int(head) - n)
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def minimize_extension_over_auxiliaries(
    g: ReducedDigraph, x: np.ndarray, budget: OracleBudget = DEFAULT_BUDGET
) -> float:
    """Minimum of the digraph cut extension over the auxiliary coordinates.

    The extension is piecewise linear and its minimum over each auxiliary
    coordinate is attained at one of the distinct values of ``x``, so the
    restricted enumeration is exact.  Auxiliary vertices in different
    connected groups of the auxiliary-to-auxiliary arc graph do not interact
    and are enumerated independently.
    """
    x = np.asarray(x, dtype=float)
    n = g.num_original
    m = g.num_auxiliary
    if x.shape != (n,):
        raise ContractError("x must have one entry per original vertex")
    _require(m <= budget.max_auxiliary, f"{m} auxiliaries exceed the oracle budget")
    if m == 0:
        return directed_total_variation(g, x)
    values = np.unique(x)

    components = _auxiliary_components(g)
    comp_of = {}
    for ci, comp in enumerate(components):
        for a in comp:
            comp_of[a] = ci

    fixed = 0.0
    comp_arcs: list[list[tuple[int, int, float]]] = [[] for _ in components]
    for t, head, w in zip(g.tails, g.heads, g.weights):
        t, head, w = int(t), int(head), float(w)
        if t < n and head < n:
            fixed += w * max(x[t] - x[head], 0.0)
        else:
            ci = comp_of[t - n] if t >= n else comp_of[head - n]
            comp_arcs[ci].append((t, head, w))

    total = fixed
    for comp, arcs in zip(components, comp_arcs):
        k = len(comp)
        count = len(values) ** k
        _require(
            count <= budget.max_assignments,
            f"{count} auxiliary assignments exceed the oracle budget",
        )
        slot = {a: i for i, a in enumerate(comp)}
        grids = np.meshgrid(*([values] * k), indexing="ij")
        assign = np.stack([grid.ravel() for grid in grids], axis=1)  # (count, k)
        acc = np.zeros(count)
        for t, head, w in arcs:
            yt = assign[:, slot[t - n]] if t >= n else np.full(count, x[t])
            yh = assign[:, slot[head - n]] if head >= n else np.full(count, x[head])
            acc += w * np.maximum(yt - yh, 0.0)
        total += float(acc.min())
    return total


def subgradient_min_over_auxiliaries(
    g: ReducedDigraph, x: np.ndarray, steps: int = 1000, seed: int = 0
) -> float:
    """Approximate verifier for the restricted enumeration: projected
    subgradient descent over the auxiliary coordinates with diminishing steps.
    Returns the best value along the trajectory (an upper bound on the true
    minimum).
    """
    x = np.asarray(x, dtype=float)
    n = g.num_original
    m = g.num_auxiliary
    if m == 0:
        return directed_total_variation(g, x)
    rng = np.random.default_rng(seed)
    lo, hi = float(x.min()), float(x.max())
    xbar = rng.uniform(lo, hi, size=m) if hi > lo else np.full(m, lo)
    span = max(hi - lo, 1e-12)
    best = np.inf
    for k in range(1, steps + 1):
        y = np.concatenate([x, xbar])
        best = min(best, directed_total_variation(g, y))
        diff = y[g.tails] - y[g.heads]
        active = (diff > 0).astype(float)
        grad_full = np.bincount(g.tails, weights=g.weights * active, minlength=n + m)
        grad_full -= np.bincount(g.heads, weights=g.weights * active, minlength=n + m)
        grad = grad_full[n:]
        nrm = np.linalg.norm(grad)
        if nrm == 0.0:
            break
        xbar = np.clip(xbar - (span / np.sqrt(k)) * grad / nrm, lo, hi)
    best = min(best, directed_total_variation(g, np.concatenate([x, xbar])))
    return float(best)


@dataclass(frozen=True)
class SfmResult:
    value: float
    subset: tuple[int, ...]


def brute_sfm(
    set_fn: Callable[[frozenset[int]], float],
    n: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> SfmResult:
    """Exhaustive minimum of a set function over all subsets, empty included."""
    _require(n <= budget.max_vertices, f"{n} vertices exceed the oracle budget")
    best_value = np.inf
    best_set: tuple[int, ...] = ()
    for mask in range(1 << n):
        subset = tuple(v for v in range(n) if mask >> v & 1)
        value = set_fn(frozenset(subset))
        if value < best_value:
            best_value = value
            best_set = subset
    return SfmResult(float(best_value), best_set)


def reduced_set_value(
    g: ReducedDigraph,
    subset: Collection[int],
    g_tilde: np.ndarray,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> float:
    """Value of the reduced submodular objective at a subset of the original
    vertices: the auxiliary-minimized digraph cut minus the linear term.
    """
    m = g.num_auxiliary
    _require(m <= budget.max_auxiliary, f"{m} auxiliaries exceed the oracle budget")
    subset = sorted(set(int(v) for v in subset))
    g_tilde = np.asarray(g_tilde, dtype=float)
    best = np.inf
    n = g.num_original
    for t_mask in range(1 << m):
        aug = list(subset) + [n + a for a in range(m) if t_mask >> a & 1]
        best = min(best, digraph_cut(g, aug))
    linear = float(g_tilde[subset].sum()) if subset else 0.0
    return float(best) - linear


def sfm_via_prox(
    g: ReducedDigraph,
    g_tilde: np.ndarray,
    budget: OracleBudget = DEFAULT_BUDGET,
    *,
    tol: float = 1e-12,
    max_iter: int = 50_000,
) -> SfmResult:
    """Minimize the reduced submodular objective by one proximal solve.

    The strictly positive coordinates of the proximal minimizer form the
    minimizing set; coordinates within the threshold tolerance of zero are
    ambiguous, so both closures are evaluated and the better one returned.
    The reported value reuses the exhaustive evaluator so it is bit-identical
    to a brute-force enumeration of the same objective.
    """
    g_tilde = np.asarray(g_tilde, dtype=float)
    if g_tilde.shape != (g.num_vertices,):
        raise ContractError("g_tilde must have one entry per digraph vertex")
    if np.any(np.abs(g_tilde[g.num_original:]) > 0):
        raise ContractError("g_tilde must vanish on the auxiliary vertices")
    sol = solve_inner_pdhg(g, g_tilde, tol=tol, max_iter=max_iter)
    y = sol.y
    strict = set(np.nonzero(y > THRESHOLD_ATOL)[0].tolist())
    ambiguous = set(np.nonzero(np.abs(y) <= THRESHOLD_ATOL)[0].tolist())
    candidates = [strict]
    if ambiguous:
        candidates.append(strict | ambiguous)
    best: SfmResult | None = None
    for full_set in candidates:
        original = tuple(sorted(v for v in full_set if v < g.num_original))
        value = reduced_set_value(g, original, g_tilde, budget)
        if best is None or value < best.value:
            best = SfmResult(value, original)
    return best


def prox_minimizer_parametric(
    g: ReducedDigraph,
    g_tilde: np.ndarray,
    budget: OracleBudget = DEFAULT_BUDGET,
    *,
    bisection_steps: int = 64,
) -> np.ndarray:
    """Reference minimizer of the proximal problem, one coordinate at a time.

    Coordinate v of the minimizer is the level at which v stops being worth
    including in the threshold sets, located by bisection on the exhaustive
    parametric set problem.  Exponential in the vertex count, exact up to
    bisection width.
    """
    g_tilde = np.asarray(g_tilde, dtype=float)
    n = g.num_vertices
    _require(n <= budget.max_vertices + budget.max_auxiliary, "digraph too large")
    table = cut_table(g)
    masks = np.arange(1 << n, dtype=np.int64)
    popcount = np.zeros(1 << n)
    linear = np.zeros(1 << n)
    for v in range(n):
        bit = ((masks >> v) & 1).astype(float)
        popcount += bit
        linear += bit * g_tilde[v]

    def margin(v: int, t: float) -> float:
        objective = table - linear + t * popcount
        has_v = ((masks >> v) & 1).astype(bool)
        return float(objective[has_v].min() - objective[~has_v].min())

    lo = float(g_tilde.min()) - float(g.weights.sum()) - 1.0
    hi = float(g_tilde.max()) + float(g.weights.sum()) + 1.0
    y = np.zeros(n)
    for v in range(n):
        a, b = lo, hi
        for _ in range(bisection_steps):
            mid = 0.5 * (a + b)
            if margin(v, mid) <= 0:
                a = mid
            else:
                b = mid
        y[v] = 0.5 * (a + b)
    return y


def brute_dual_minimum(
    pairing,
    g_tilde: np.ndarray,
    budget: OracleBudget = DEFAULT_BUDGET,
    *,
    points: int = 21,
    max_stages: int = 16,
) -> float:
    """Grid minimum of the dual objective over the unit box.

    Successive stages re-grid around the running argmin, shrinking the window
    by the grid pitch each time until it falls below the budget's grid
    resolution; the objective is smooth and convex, so the refinement homes
    in on the global box minimum.
    """
    m = pairing.m
    _require(m <= budget.max_pairs, f"{m} dual pairs exceed the oracle budget")
    if m == 0:
        return float(np.linalg.norm(g_tilde) ** 2)
    _require(points**m <= budget.max_assignments, "dual grid exceeds the oracle budget")

    def batch_objective(alphas: np.ndarray) -> np.ndarray:
        # alphas has shape (count, m)
        val = (pairing.w_uv + pairing.w_vu)[None, :] * alphas - pairing.w_vu[None, :]
        f = np.zeros((alphas.shape[0], pairing.num_vertices))
        np.add.at(f, (slice(None), pairing.us), val)
        np.add.at(f, (slice(None), pairing.vs), -val)
        r = f - g_tilde[None, :]
        return np.einsum("ij,ij->i", r, r)

    lo = np.zeros(m)
    hi = np.ones(m)
    best = np.inf
    for _ in range(max_stages):
        axes = [np.linspace(lo[i], hi[i], points) for i in range(m)]
        grids = np.meshgrid(*axes, indexing="ij")
        alphas = np.stack([grid.ravel() for grid in grids], axis=1)
        values = batch_objective(alphas)
        idx = int(values.argmin())
        best = min(best, float(values[idx]))
        center = alphas[idx]
        width = (hi - lo) / (points - 1)
        lo = np.clip(center - width, 0.0, 1.0)
        hi = np.clip(center + width, 0.0, 1.0)
        if float(np.max(hi - lo)) <= budget.grid_resolution:
            break
    return best
