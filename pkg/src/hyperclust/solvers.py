"""First-order solvers for the inner problem on the reduced digraph.

Two routes to the same convex problem: FISTA on a smooth dual over one
bounded variable per connected vertex pair, and an accelerated primal-dual
splitting on the proximal form.  Both accept warm starts because successive
inner problems inside the outer eigenvector loop differ only slightly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DEGENERATE_RESIDUAL
from .errors import ContractError
from .reduction import ReducedDigraph, directed_total_variation

# A relative objective change below tol must persist this many iterations.
_STALL_ITERS = 5


@dataclass(frozen=True)
class GradientOperator:
    """Arc-difference operator: one row per arc with +-weight at its endpoints.

    Applying it to a vector y gives weight * (y[tail] - y[head]) per arc, so
    every row sums to zero and the all-ones vector maps to zero.
    """

    tails: np.ndarray
    heads: np.ndarray
    weights: np.ndarray
    num_vertices: int

    @property
    def num_arcs(self) -> int:
        return int(self.tails.size)

    def apply(self, y: np.ndarray) -> np.ndarray:
        return self.weights * (y[self.tails] - y[self.heads])

    def apply_adjoint(self, z: np.ndarray) -> np.ndarray:
        wz = self.weights * z
        out = np.bincount(self.tails, weights=wz, minlength=self.num_vertices)
        out -= np.bincount(self.heads, weights=wz, minlength=self.num_vertices)
        return out


def build_operator(g: ReducedDigraph) -> GradientOperator:
    return GradientOperator(g.tails, g.heads, g.weights, g.num_vertices)


def operator_norm_estimate(op: GradientOperator, iters: int = 100, seed: int = 0) -> float:
    """Largest singular value of the operator, by power iteration on B^T B."""
    if op.num_arcs == 0:
        raise ContractError("the operator has no arcs; its norm is zero")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(op.num_vertices)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iters):
        w = op.apply_adjoint(op.apply(v))
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            # v landed in the kernel; re-seed deterministically
            v = rng.standard_normal(op.num_vertices)
            v /= np.linalg.norm(v)
            continue
        lam = float(v @ w)
        v = w / nrm
    return math.sqrt(max(lam, 0.0))


def lipschitz_bound(g: ReducedDigraph) -> float:
    """Upper bound on the gradient Lipschitz constant of the dual objective:
    four times the largest per-vertex sum of squared symmetrized pair weights.
    """
    if g.num_arcs == 0:
        raise ContractError("the digraph has no arcs")
    pairing = DualPairing.from_digraph(g)
    s2 = (pairing.w_uv + pairing.w_vu) ** 2
    per_vertex = np.bincount(pairing.us, weights=s2, minlength=g.num_vertices)
    per_vertex += np.bincount(pairing.vs, weights=s2, minlength=g.num_vertices)
    return 4.0 * float(per_vertex.max())


@dataclass(frozen=True)
class DualPairing:
    """Unordered connected vertex pairs (u < v) with their two arc weights.

    One free dual variable in [0, 1] per pair; the reverse orientation is its
    complement to one.
    """

    us: np.ndarray
    vs: np.ndarray
    w_uv: np.ndarray
    w_vu: np.ndarray
    num_vertices: int

    @property
    def m(self) -> int:
        return int(self.us.size)

    @classmethod
    def from_digraph(cls, g: ReducedDigraph) -> "DualPairing":
        forward: dict[tuple[int, int], float] = {}
        backward: dict[tuple[int, int], float] = {}
        for t, h, w in zip(g.tails, g.heads, g.weights):
            key = (int(min(t, h)), int(max(t, h)))
            if t < h:
                forward[key] = forward.get(key, 0.0) + float(w)
            else:
                backward[key] = backward.get(key, 0.0) + float(w)
        keys = sorted(set(forward) | set(backward))
        us = np.asarray([k[0] for k in keys], dtype=np.int64)
        vs = np.asarray([k[1] for k in keys], dtype=np.int64)
        w_uv = np.asarray([forward.get(k, 0.0) for k in keys])
        w_vu = np.asarray([backward.get(k, 0.0) for k in keys])
        for arr in (us, vs, w_uv, w_vu):
            arr.setflags(write=False)
        return cls(us, vs, w_uv, w_vu, g.num_vertices)

    def pair_image(self, alpha: np.ndarray) -> np.ndarray:
        """Vertex-indexed image of the dual point (zero-sum by construction)."""
        val = (self.w_uv + self.w_vu) * alpha - self.w_vu
        out = np.bincount(self.us, weights=val, minlength=self.num_vertices)
        out -= np.bincount(self.vs, weights=val, minlength=self.num_vertices)
        return out

    def dual_objective(self, alpha: np.ndarray, g_tilde: np.ndarray) -> float:
        r = self.pair_image(alpha) - g_tilde
        return float(r @ r)

    def dual_gradient(self, alpha: np.ndarray, g_tilde: np.ndarray) -> np.ndarray:
        """Gradient of the dual objective at ``alpha``."""
        r = self.pair_image(alpha) - g_tilde
        return 2.0 * (self.w_uv + self.w_vu) * (r[self.us] - r[self.vs])


@dataclass
class InnerSolution:
    """Result of one inner solve.

    FISTA reports the ball-constrained solution (norm at most one); the
    primal-dual route reports the proximal solution, which the caller may
    normalize.
    """

    y: np.ndarray
    objective: float
    iterations: int
    converged: bool
    residual: float
    degenerate: bool = False
    trace: list[tuple[int, float, float]] | None = None
    dual_state: np.ndarray | None = None  # warm start for the next solve


def _degenerate_threshold(g_tilde: np.ndarray) -> float:
    return DEGENERATE_RESIDUAL * max(1.0, float(np.linalg.norm(g_tilde)))


def solve_inner_fista(
    g: ReducedDigraph,
    g_tilde: np.ndarray,
    lipschitz: float,
    *,
    tol: float = 1e-8,
    max_iter: int = 10000,
    alpha0: np.ndarray | None = None,
    record_trace: bool = False,
) -> InnerSolution:
    """Accelerated projected gradient on the smooth dual.

    Runs the standard momentum recursion with a restart-on-increase safeguard
    and returns the primal vector recovered from the best dual point seen.
    A vanishing dual residual means the primal optimum is zero; the zero
    vector is returned with the degenerate flag set.
    """
    g_tilde = np.asarray(g_tilde, dtype=float)
    if g_tilde.shape != (g.num_vertices,):
        raise ContractError("g_tilde must have one entry per digraph vertex")
    pairing = DualPairing.from_digraph(g)
    trace: list[tuple[int, float, float]] | None = [] if record_trace else None

    if pairing.m == 0:
        return _solution_from_residual(g, g_tilde, -g_tilde, 0, True, 0.0, trace)

    if lipschitz <= 0:
        raise ContractError("the Lipschitz constant must be positive")
    alpha = np.full(pairing.m, 0.5) if alpha0 is None else np.clip(alpha0, 0.0, 1.0)
    beta = alpha.copy()
    t = 1.0
    psi = pairing.dual_objective(alpha, g_tilde)
    best_alpha, best_psi = alpha.copy(), psi
    stall = 0
    residual = math.inf
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        alpha_prev = alpha
        alpha = np.clip(beta - pairing.dual_gradient(beta, g_tilde) / lipschitz, 0.0, 1.0)
        t_prev = t
        t = (1.0 + math.sqrt(1.0 + 4.0 * t * t)) / 2.0
        beta = alpha + ((t_prev - 1.0) / t) * (alpha - alpha_prev)
        psi_prev = psi
        psi = pairing.dual_objective(alpha, g_tilde)
        if psi > psi_prev:
            # momentum restart keeps the objective non-increasing
            t = 1.0
            beta = alpha.copy()
        if psi < best_psi:
            best_psi = psi
            best_alpha = alpha.copy()
        residual = abs(psi - psi_prev) / max(psi_prev, 1e-300)
        if trace is not None:
            trace.append((it, psi, residual))
        # a flat objective only counts as converged while the iterate has
        # stopped moving; momentum rebuilds after a restart look flat too
        step = float(np.linalg.norm(alpha - alpha_prev))
        moving = step > math.sqrt(tol) * max(1.0, float(np.linalg.norm(alpha)))
        stall = stall + 1 if (residual < tol and not moving) else 0
        if stall >= _STALL_ITERS:
            converged = True
            break

    r = pairing.pair_image(best_alpha) - g_tilde
    return _solution_from_residual(g, g_tilde, r, it, converged, residual, trace, best_alpha)


def _solution_from_residual(g, g_tilde, r, iterations, converged, residual, trace, state=None):
    nrm = float(np.linalg.norm(r))
    if nrm < _degenerate_threshold(g_tilde):
        y = np.zeros(g.num_vertices)
        return InnerSolution(y, 0.0, iterations, converged, residual, True, trace, state)
    y = -r / nrm
    objective = directed_total_variation(g, y) - float(y @ g_tilde)
    return InnerSolution(y, objective, iterations, converged, residual, False, trace, state)


def solve_inner_pdhg(
    g: ReducedDigraph,
    g_tilde: np.ndarray,
    *,
    tol: float = 1e-8,
    max_iter: int = 10000,
    step_scale: float = 0.9,
    operator_norm: float | None = None,
    z0: np.ndarray | None = None,
    y0: np.ndarray | None = None,
    record_trace: bool = False,
) -> InnerSolution:
    """Accelerated primal-dual splitting on the proximal form.

    Minimizes the cut extension plus half the squared distance to ``g_tilde``.
    Steps start at step_scale over the operator norm and are rebalanced every
    iteration by the strong-convexity acceleration rule.  Returns the
    proximal minimizer; callers needing the ball-constrained solution
    normalize it.
    """
    g_tilde = np.asarray(g_tilde, dtype=float)
    if g_tilde.shape != (g.num_vertices,):
        raise ContractError("g_tilde must have one entry per digraph vertex")
    op = build_operator(g)
    trace: list[tuple[int, float, float]] | None = [] if record_trace else None

    if op.num_arcs == 0:
        y = g_tilde.copy()
        return InnerSolution(y, 0.0, 0, True, 0.0, False, trace)

    norm = operator_norm if operator_norm is not None else operator_norm_estimate(op)
    tau = sigma = step_scale / norm
    z = np.zeros(op.num_arcs) if z0 is None else np.clip(z0, 0.0, 1.0)
    y = g_tilde.copy() if y0 is None else np.asarray(y0, dtype=float).copy()
    ybar = y.copy()

    def objective(vec: np.ndarray) -> float:
        dv = float(np.maximum(op.apply(vec), 0.0).sum())
        return dv + 0.5 * float(np.sum((vec - g_tilde) ** 2))

    obj = objective(y)
    best_y, best_obj = y.copy(), obj
    stall = 0
    residual = math.inf
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        z = np.clip(z + sigma * op.apply(ybar), 0.0, 1.0)
        y_old = y
        y = (y - tau * (op.apply_adjoint(z) - g_tilde)) / (1.0 + tau)
        theta = 1.0 / math.sqrt(1.0 + tau)
        tau *= theta
        sigma /= theta
        ybar = y + theta * (y - y_old)
        obj_prev = obj
        obj = objective(y)
        if obj < best_obj:
            best_obj = obj
            best_y = y.copy()
        residual = abs(obj - obj_prev) / max(abs(obj_prev), 1e-300)
        if trace is not None:
            trace.append((it, obj, residual))
        step = float(np.linalg.norm(y - y_old))
        moving = step > math.sqrt(tol) * max(1.0, float(np.linalg.norm(y)))
        stall = stall + 1 if (residual < tol and not moving) else 0
        if stall >= _STALL_ITERS:
            converged = True
            break

    return InnerSolution(best_y, best_obj, it, converged, residual, False, trace, z)
