"""Hyperedge splitting functions.

A splitting function assigns a non-negative penalty to every way of cutting a
hyperedge in two.  All kinds implemented here are symmetric (the penalty of a
subset equals the penalty of its complement), vanish on the empty set, and are
submodular.  Except for the all-or-nothing kind they are concave functions of
the weight mass placed on one side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractError

ALL_OR_NOTHING = "all_or_nothing"
CARDINALITY = "cardinality"
EDVW = "edvw"
CUSTOM = "custom"

_KINDS = (ALL_OR_NOTHING, CARDINALITY, EDVW, CUSTOM)

# Size limits for the exact balanced-split search.
_ENUM_LIMIT = 12          # full subset enumeration
_FLOAT_DP_LIMIT = 20      # set-based subset-sum on raw floats
_BITSET_LIMIT = 1 << 27   # largest scaled integer total for the bitset DP


@dataclass(frozen=True)
class SplittingSpec:
    """Declarative description of the splitting function applied per hyperedge.

    kind:
        ``all_or_nothing``  constant penalty kappa for any proper split;
        ``cardinality``     kappa * min(|S|, |e|-|S|, beta*|e|);
        ``edvw``            kappa * min(mass(S), total-mass(S), beta*total)
                            where mass(S) sums the edge-dependent weights;
        ``custom``          kappa * total * g(mass(S)/total) for a
                            piecewise-linear concave symmetric g given as
                            breakpoints on [0, 1] with g(0) = g(1) = 0.
    beta:
        cap fraction in (0, 0.5]; required for the capped kinds.
    """

    kind: str
    beta: float | None = None
    breakpoints: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ContractError(f"unknown splitting kind {self.kind!r}")
        if self.kind in (CARDINALITY, EDVW):
            if self.beta is None or not (0.0 < self.beta <= 0.5):
                raise ContractError("beta must lie in (0, 0.5] for capped splittings")
        if self.kind == CUSTOM:
            self._validate_breakpoints()

    def _validate_breakpoints(self) -> None:
        pts = self.breakpoints
        if not pts or len(pts) < 2:
            raise ContractError("custom splitting needs at least two breakpoints")
        ts = np.asarray([p[0] for p in pts], dtype=float)
        vs = np.asarray([p[1] for p in pts], dtype=float)
        if ts[0] != 0.0 or ts[-1] != 1.0 or np.any(np.diff(ts) <= 0):
            raise ContractError("breakpoint abscissae must increase from 0 to 1")
        if abs(vs[0]) > 1e-12 or abs(vs[-1]) > 1e-12:
            raise ContractError("custom g must vanish at 0 and 1")
        if np.any(vs < -1e-12) or vs.max() <= 0:
            raise ContractError("custom g must be non-negative and not identically zero")
        # symmetry around 1/2
        for t, v in zip(ts, vs):
            if abs(_interp(ts, vs, 1.0 - t) - v) > 1e-9:
                raise ContractError("custom g must be symmetric around 1/2")
        slopes = np.diff(vs) / np.diff(ts)
        if np.any(np.diff(slopes) > 1e-9):
            raise ContractError("custom g must be concave")


def _interp(ts: np.ndarray, vs: np.ndarray, t: float) -> float:
    return float(np.interp(t, ts, vs))


def _custom_value(spec: SplittingSpec, fraction_mass: float) -> float:
    ts = np.asarray([p[0] for p in spec.breakpoints], dtype=float)
    vs = np.asarray([p[1] for p in spec.breakpoints], dtype=float)
    return _interp(ts, vs, fraction_mass)


def penalty_from_mass(
    spec: SplittingSpec, kappa: float, total: float, mass: float, count: int, size: int
) -> float:
    """Splitting penalty given the weight mass and member count on one side."""
    if count <= 0 or count >= size:
        return 0.0
    if spec.kind == ALL_OR_NOTHING:
        return kappa
    if spec.kind == CARDINALITY:
        return kappa * min(count, size - count, spec.beta * size)
    if spec.kind == EDVW:
        return kappa * min(mass, total - mass, spec.beta * total)
    return kappa * total * _custom_value(spec, mass / total)


def splitting_penalty(edge, spec: SplittingSpec, subset) -> float:
    """Penalty for separating ``subset`` from the rest of ``edge``.

    ``subset`` must contain member vertices only; the empty set and the full
    edge cost nothing.
    """
    subset = frozenset(subset)
    member_set = frozenset(edge.members)
    if not subset <= member_set:
        raise ContractError(
            f"subset {sorted(subset - member_set)} contains non-members of the hyperedge"
        )
    mass = float(sum(g for v, g in zip(edge.members, edge.gamma) if v in subset))
    return penalty_from_mass(
        spec, edge.kappa, edge.gamma_total, mass, len(subset), len(edge.members)
    )


def max_splitting_penalty(edge, spec: SplittingSpec) -> float:
    """Largest penalty over all subsets of the edge (exact).

    For the concave kinds the maximum sits at the achievable mass closest to
    half the total, found by an exact subset-sum search; the capped kinds
    short-circuit when the cap is reachable.
    """
    kappa = edge.kappa
    size = len(edge.members)
    if spec.kind == ALL_OR_NOTHING:
        return kappa
    if spec.kind == CARDINALITY:
        return kappa * min(size // 2, spec.beta * size)
    gamma = np.asarray(edge.gamma, dtype=float)
    total = edge.gamma_total
    if spec.kind == EDVW:
        cap = spec.beta * total
        if _cap_window_reachable(gamma, total, spec.beta):
            return kappa * cap
        balanced = best_balanced_mass(gamma)
        return kappa * min(balanced, cap)
    balanced = best_balanced_mass(gamma)
    return kappa * total * _custom_value(spec, balanced / total)


def _cap_window_reachable(gamma: np.ndarray, total: float, beta: float) -> bool:
    # Items no larger than the window width can be stacked greedily until the
    # running sum first lands inside [beta*total, (1-beta)*total].
    width = (1.0 - 2.0 * beta) * total
    small = gamma[gamma <= width]
    return bool(small.sum() >= beta * total)


def best_balanced_mass(gamma: np.ndarray) -> float:
    """Largest subset sum of ``gamma`` not exceeding half the total.

    Exact: enumeration for small edges, an integer bitset subset-sum after
    rational scaling otherwise, with a float set-sum fallback for mid-size
    edges whose values do not scale to manageable integers.
    """
    values = [float(g) for g in gamma]
    n = len(values)
    total = math.fsum(values)
    half = total / 2.0
    if n <= _ENUM_LIMIT:
        sums = np.zeros(1)
        for g in values:
            sums = np.concatenate([sums, sums + g])
        return float(sums[sums <= half].max())

    scaled = _scale_to_integers(values)
    if scaled is not None:
        ints, unit = scaled
        target = sum(ints) // 2
        reachable = 1
        window = (1 << (target + 1)) - 1
        for v in ints:
            reachable |= reachable << v
            reachable &= window
        return float((reachable.bit_length() - 1) * unit)

    if n <= _FLOAT_DP_LIMIT:
        sums = {0.0}
        for g in values:
            sums |= {s + g for s in sums if s + g <= half}
        return max(sums)

    raise ContractError(
        f"edge with {n} members has weights that do not scale to a tractable "
        "exact balanced-split search; quantize the vertex weights first"
    )


def _scale_to_integers(values: list[float]) -> tuple[list[int], Fraction] | None:
    """Rescale to integers; returns them with the exact weight of one unit."""
    fracs = [Fraction(v) for v in values]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // math.gcd(denom, f.denominator)
        if denom > _BITSET_LIMIT:
            return None
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    if sum(ints) > _BITSET_LIMIT:
        return None
    return ints, Fraction(max(g, 1), denom)
