"""Run configuration shared by the library pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .errors import ContractError
from .splitting import ALL_OR_NOTHING, CARDINALITY, EDVW

_SPLITTINGS = (EDVW, CARDINALITY, ALL_OR_NOTHING)
_SOLVERS = ("pdhg", "fista")
_INIT_MODES = ("rw", "random", "indicator")


@dataclass(frozen=True)
class RunConfig:
    """Everything a clustering run depends on besides the input hypergraph.

    ``alpha`` is the exponent applied to the stored edge-dependent weights
    (zero recovers cardinality-style behaviour); ``beta`` is the splitting
    cap fraction; ``epsilon`` the relative stopping tolerance of the outer
    loop.
    """

    splitting: str = EDVW
    beta: float = 0.2
    alpha: float = 1.0
    solver: str = "pdhg"
    epsilon: float = 1e-4
    inner_tol: float = 1e-8
    inner_max_iter: int = 10000
    max_outer_iter: int = 100
    init: str = "rw"
    restarts: int = 0
    seed: int = 0
    indicator: tuple[int, ...] | None = None
    alpha_grid: tuple[float, ...] | None = None
    beta_grid: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.splitting not in _SPLITTINGS:
            raise ContractError(f"unknown splitting {self.splitting!r}")
        if self.splitting != ALL_OR_NOTHING and not (0.0 < self.beta <= 0.5):
            raise ContractError("beta must lie in (0, 0.5]")
        if self.alpha < 0:
            raise ContractError("alpha must be non-negative")
        if self.solver not in _SOLVERS:
            raise ContractError(f"unknown solver {self.solver!r}")
        for name in ("epsilon", "inner_tol"):
            if getattr(self, name) <= 0:
                raise ContractError(f"{name} must be positive")
        if self.inner_max_iter < 1 or self.max_outer_iter < 1:
            raise ContractError("iteration caps must be at least 1")
        if self.init not in _INIT_MODES:
            raise ContractError(f"unknown init mode {self.init!r}")
        if self.init == "indicator" and not self.indicator:
            raise ContractError("indicator init needs a non-empty vertex set")
        if self.restarts < 0:
            raise ContractError("restarts must be non-negative")
        for grid in (self.alpha_grid, self.beta_grid):
            if grid is not None and len(grid) == 0:
                raise ContractError("sweep grids must not be empty")

    def replace(self, **updates) -> "RunConfig":
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        current.update(updates)
        return RunConfig(**current)
