"""Inverse power method for the second eigenvector of the hypergraph 1-Laplacian.

The outer loop minimizes the ratio of the cut extension to the weighted l1
deviation from the best constant, alternating a convex inner solve on the
reduced digraph with a weighted-median recentering.  The objective trace is
non-increasing by construction: a step that would raise it is rejected and
the loop stops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Sequence

import numpy as np

from .errors import ContractError
from .hypergraph import SubmodularHypergraph, dirichlet_energy, ncc
from .reduction import ReducedDigraph, reduce_to_digraph
from .solvers import (
    build_operator,
    lipschitz_bound,
    operator_norm_estimate,
    solve_inner_fista,
    solve_inner_pdhg,
)

_FLAT_EPS = 1e-12


def weighted_median(x: Sequence[float], mu: Sequence[float]) -> float:
    """A minimizer of the mu-weighted l1 distance to a constant.

    When the minimizers form an interval the lower endpoint is returned.
    """
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if x.shape != mu.shape:
        raise ContractError("x and mu must have matching shapes")
    if not np.all(mu > 0):
        raise ContractError("weights must be positive")
    order = np.argsort(x, kind="stable")
    csum = np.cumsum(mu[order])
    half = csum[-1] / 2.0
    k = int(np.searchsorted(csum, half))
    return float(x[order[k]])


def weighted_sign_vector(x: Sequence[float], mu: Sequence[float]) -> np.ndarray:
    """Subgradient of the weighted l1 norm used by the outer loop.

    Nonzero entries contribute their signed weight; zero entries share the
    weight imbalance of the strict sides so the vector sums to zero whenever
    zeros are present.
    """
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    g = np.sign(x) * mu
    zeros = x == 0.0
    if np.any(zeros):
        mu_plus = float(mu[x > 0].sum())
        mu_minus = float(mu[x < 0].sum())
        mu_zero = float(mu[zeros].sum())
        g[zeros] = (mu_minus - mu_plus) / mu_zero * mu[zeros]
    return g


def l1_deviation(x: np.ndarray, mu: np.ndarray) -> float:
    """Weighted l1 distance from ``x`` to its best constant approximation."""
    c = weighted_median(x, mu)
    return float(np.sum(mu * np.abs(x - c)))


def rayleigh_quotient(h: SubmodularHypergraph, x: Sequence[float]) -> float:
    """Cut-extension value over the centered weighted l1 norm.

    Invariant under positive scaling and constant shifts; at a centered
    indicator vector it equals the normalized Cheeger cut of the set.
    """
    x = np.asarray(x, dtype=float)
    denom = l1_deviation(x, h.vertex_weights)
    if denom <= 0.0:
        raise ContractError("the Rayleigh quotient is undefined for constant vectors")
    return dirichlet_energy(h, x, 1.0) / denom


@dataclass(frozen=True)
class Partition:
    """A bipartition obtained by thresholding an eigenvector estimate."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    ncc: float
    threshold: float


def threshold_partition(h: SubmodularHypergraph, x: Sequence[float]) -> Partition:
    """Best-NCC split among the level sets of ``x``.

    Every distinct value except the maximum is tried as a threshold; the set
    of vertices strictly above it forms one side.  Among ties the lowest
    threshold wins.
    """
    x = np.asarray(x, dtype=float)
    values = np.unique(x)
    if values.size < 2:
        raise ContractError("cannot threshold a constant vector")
    best: Partition | None = None
    all_vertices = np.arange(h.num_vertices)
    for t in values[:-1]:
        side = tuple(int(v) for v in all_vertices[x > t])
        value = ncc(h, side)
        if best is None or value < best.ncc:
            rest = tuple(int(v) for v in all_vertices[x <= t])
            best = Partition(side, rest, value, float(t))
    return best


@dataclass(frozen=True)
class IpmResult:
    """Final eigenvector estimate with the objective trace of the run."""

    x: np.ndarray
    value: float
    trace: tuple[float, ...]
    iterations: int
    converged: bool
    degenerate: bool


def inverse_power_method(
    h: SubmodularHypergraph,
    x0: Sequence[float],
    *,
    epsilon: float = 1e-4,
    solver: str = "pdhg",
    inner_tol: float = 1e-8,
    inner_max_iter: int = 10000,
    max_outer_iter: int = 100,
    digraph: ReducedDigraph | None = None,
) -> IpmResult:
    """Minimize the Rayleigh quotient starting from a non-constant vector.

    Each pass solves the inner problem with the current objective value
    scaling the linear term, restricts the solution to the original
    vertices, renormalizes, recenters by the weighted median, and accepts
    the step only if the objective does not increase.  Stops when the
    relative objective change drops below ``epsilon``, on degeneracy of the
    inner problem, or at the iteration cap.
    """
    if solver not in ("pdhg", "fista"):
        raise ContractError(f"unknown inner solver {solver!r}")
    if not h.base.is_connected:
        raise ContractError("the inverse power method requires a connected hypergraph")
    mu = h.vertex_weights
    n = h.num_vertices
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (n,):
        raise ContractError("x0 must have one entry per vertex")
    x -= weighted_median(x, mu)
    if np.max(np.abs(x)) <= _FLAT_EPS:
        raise ContractError("x0 must not be constant")
    x /= np.linalg.norm(x)

    g = digraph if digraph is not None else reduce_to_digraph(h)
    num_aux = g.num_auxiliary
    has_arcs = g.num_arcs > 0
    lips = lipschitz_bound(g) if (solver == "fista" and has_arcs) else None
    op_norm = (
        operator_norm_estimate(build_operator(g)) if (solver == "pdhg" and has_arcs) else None
    )

    lam = rayleigh_quotient(h, x)
    trace = [lam]
    warm: np.ndarray | None = None
    converged = False
    degenerate = False
    it = 0
    for it in range(1, max_outer_iter + 1):
        g_tilde = np.concatenate([lam * weighted_sign_vector(x, mu), np.zeros(num_aux)])
        if solver == "fista":
            sol = solve_inner_fista(
                g, g_tilde, lips, tol=inner_tol, max_iter=inner_max_iter, alpha0=warm
            )
            y = sol.y
        else:
            sol = solve_inner_pdhg(
                g,
                g_tilde,
                tol=inner_tol,
                max_iter=inner_max_iter,
                operator_norm=op_norm,
                z0=warm,
            )
            nrm = float(np.linalg.norm(sol.y))
            if nrm <= _FLAT_EPS:
                sol.degenerate = True
            y = sol.y / nrm if nrm > _FLAT_EPS else sol.y
        warm = sol.dual_state
        if sol.degenerate:
            degenerate = True
            converged = True
            break
        x_new = y[:n].copy()
        nrm = float(np.linalg.norm(x_new))
        if nrm <= _FLAT_EPS:
            degenerate = True
            converged = True
            break
        x_new /= nrm
        x_new -= weighted_median(x_new, mu)
        if np.max(np.abs(x_new)) <= _FLAT_EPS:
            degenerate = True
            converged = True
            break
        lam_new = rayleigh_quotient(h, x_new)
        if lam_new > lam:
            # an inexact inner solve can no longer improve the objective
            converged = True
            break
        lam_prev = lam
        x, lam = x_new, lam_new
        trace.append(lam)
        if abs(lam - lam_prev) / lam_prev < epsilon:
            converged = True
            break

    return IpmResult(x, lam, tuple(trace), it, converged, degenerate)


def centered_indicator(subset: Collection[int], n: int, mu: Sequence[float]) -> np.ndarray:
    """Indicator vector of a set, recentered to have zero weighted median."""
    x = np.zeros(n)
    x[list(set(int(v) for v in subset))] = 1.0
    return x - weighted_median(x, np.asarray(mu, dtype=float))
