"""Exception types shared across the package."""


class ContractError(ValueError):
    """An argument violated a documented precondition."""


class ParseError(ValueError):
    """A hypergraph file could not be parsed; message carries the line number."""


class NotReducibleError(ValueError):
    """The splitting function family is not handled by the digraph builder."""


class BudgetExceededError(RuntimeError):
    """A brute-force oracle was asked to enumerate beyond its configured budget."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to reach its tolerance within the iteration cap."""


class IngestError(ValueError):
    """Dataset ingestion produced no usable hypergraph."""
