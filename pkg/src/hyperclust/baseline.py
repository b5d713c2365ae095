"""Random-walk baseline for hypergraphs with edge-dependent vertex weights.

A walker at a vertex picks an incident hyperedge proportionally to the edge
weight, then a member vertex proportionally to its weight within that edge.
The stationary-symmetrized adjacency of this chain yields a plain graph whose
normalized 2-Laplacian provides the classical spectral embedding, and whose
cut agrees with the hypergraph cut under the induced pairwise splitting
functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

import numpy as np

from .errors import ContractError, ConvergenceError
from .hypergraph import EdvwHypergraph


def edge_kappa_totals(h: EdvwHypergraph) -> np.ndarray:
    """Per-vertex sum of incident hyperedge weights."""
    totals = np.zeros(h.num_vertices)
    for e in h.hyperedges:
        totals[list(e.members)] += e.kappa
    return totals


def transition_matrix(h: EdvwHypergraph) -> np.ndarray:
    """Row-stochastic transition matrix of the two-step random walk."""
    if not h.is_connected:
        raise ContractError("the random walk needs a connected hypergraph")
    totals = edge_kappa_totals(h)
    p = np.zeros((h.num_vertices, h.num_vertices))
    for e in h.hyperedges:
        members = list(e.members)
        dist = e.gamma / e.gamma_total
        for u in members:
            p[u, members] += (e.kappa / totals[u]) * dist
    return p


def edge_step_probability(
    h: EdvwHypergraph, edge_index: int, u: int, v: int, totals: np.ndarray | None = None
) -> float:
    """Probability of stepping from u to v through the given hyperedge."""
    e = h.hyperedges[edge_index]
    if u not in e.members or v not in e.members:
        return 0.0
    if totals is None:
        totals = edge_kappa_totals(h)
    gamma_v = e.gamma[e.members.index(v)]
    return float(e.kappa / totals[u] * gamma_v / e.gamma_total)


def stationary_distribution(
    p: np.ndarray, tol: float = 1e-12, max_iter: int = 500_000
) -> np.ndarray:
    """Stationary distribution of an irreducible chain, unit l1 norm.

    Power iteration runs on the lazy chain (half self-loop), which has the
    same stationary distribution but converges for periodic chains too.
    """
    p = np.asarray(p, dtype=float)
    n = p.shape[0]
    pi = np.full(n, 1.0 / n)
    pt = p.T
    for _ in range(max_iter):
        nxt = 0.5 * (pi + pt @ pi)
        nxt /= nxt.sum()
        pi = nxt
        if float(np.abs(pt @ pi - pi).sum()) <= tol:
            return pi
    raise ConvergenceError(
        f"stationary distribution did not reach an l1 residual of {tol} "
        f"within {max_iter} iterations"
    )


def random_walk_adjacency(p: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """Symmetric adjacency whose graph cut matches the walk's flow across sets."""
    p = np.asarray(p, dtype=float)
    pi = np.asarray(pi, dtype=float)
    flow = pi[:, None] * p
    return 0.5 * (flow + flow.T)


def random_walk_splitting_penalty(
    h: EdvwHypergraph,
    edge_index: int,
    pi: np.ndarray,
    subset: Collection[int],
    totals: np.ndarray | None = None,
) -> float:
    """Pairwise splitting penalty induced by the walk on one hyperedge:
    half the stationary flow exchanged between the two sides through it.
    """
    e = h.hyperedges[edge_index]
    if totals is None:
        totals = edge_kappa_totals(h)
    s = set(subset) & set(e.members)
    rest = [v for v in e.members if v not in s]
    total = 0.0
    for u in s:
        for v in rest:
            puv = edge_step_probability(h, edge_index, u, v, totals)
            pvu = edge_step_probability(h, edge_index, v, u, totals)
            total += 0.5 * (pi[u] * puv + pi[v] * pvu)
    return total


def random_walk_cut(
    h: EdvwHypergraph, pi: np.ndarray, subset: Collection[int]
) -> float:
    """Hypergraph cut under the walk-induced splitting functions."""
    totals = edge_kappa_totals(h)
    return sum(
        random_walk_splitting_penalty(h, j, pi, subset, totals)
        for j in range(len(h.hyperedges))
    )


@dataclass(frozen=True)
class EmbeddingResult:
    vector: np.ndarray
    eigenvalue: float
    residual: float
    gap: float
    ill_defined: bool


def normalized_laplacian_embedding(
    adjacency: np.ndarray,
    *,
    tol: float = 1e-8,
    max_iter: int = 200_000,
    seed: int = 0,
) -> EmbeddingResult:
    """Second-smallest eigenvector of the symmetric normalized Laplacian.

    Deflated power iteration on the complement operator; the converged
    eigenvector is mapped back through the inverse square-root degrees and
    sign-fixed so its first nonzero entry is positive.  A vanishing gap to
    the third eigenvalue flags the result as ill defined.
    """
    a = np.asarray(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError("the adjacency must be a square matrix")
    if np.abs(a - a.T).max() > 1e-12 * max(1.0, np.abs(a).max()):
        raise ContractError("the adjacency must be symmetric")
    deg = a.sum(axis=1)
    if not np.all(deg > 0):
        raise ContractError("every vertex needs positive degree (connected input)")
    inv_sqrt = 1.0 / np.sqrt(deg)
    normalized = a * inv_sqrt[:, None] * inv_sqrt[None, :]

    def complement_apply(u: np.ndarray) -> np.ndarray:
        return u + normalized @ u

    top = np.sqrt(deg)
    top /= np.linalg.norm(top)
    rng = np.random.default_rng(seed)

    def deflated_power(basis: list[np.ndarray], iters: int) -> tuple[np.ndarray, float, float]:
        if len(basis) >= a.shape[0]:
            return np.zeros(a.shape[0]), -np.inf, 0.0
        u = rng.standard_normal(a.shape[0])
        for b in basis:
            u -= (b @ u) * b
        u /= np.linalg.norm(u)
        lam = 0.0
        residual = np.inf
        for k in range(iters):
            w = complement_apply(u)
            for b in basis:
                w -= (b @ w) * b
            lam = float(u @ w)
            residual = float(np.linalg.norm(w - lam * u))
            nrm = np.linalg.norm(w)
            if nrm == 0.0:
                break
            u = w / nrm
            if k % 8 == 0 and residual <= tol:
                break
        w = complement_apply(u)
        for b in basis:
            w -= (b @ w) * b
        lam = float(u @ w)
        residual = float(np.linalg.norm(w - lam * u))
        return u, lam, residual

    u2, lam2, residual = deflated_power([top], max_iter)
    _, lam3, _ = deflated_power([top, u2], 2000)
    gap = lam2 - lam3
    ill_defined = gap < 1e-12 or residual > tol

    vector = u2 * inv_sqrt
    for value in vector:
        if abs(value) > 1e-12:
            if value < 0:
                vector = -vector
            break
    eigenvalue = 2.0 - lam2
    return EmbeddingResult(vector, eigenvalue, residual, gap, ill_defined)


def baseline_eigenvector(h: EdvwHypergraph, *, seed: int = 0) -> EmbeddingResult:
    """Full baseline path: walk, stationary distribution, adjacency, embedding."""
    p = transition_matrix(h)
    pi = stationary_distribution(p)
    a = random_walk_adjacency(p, pi)
    return normalized_laplacian_embedding(a, seed=seed)
