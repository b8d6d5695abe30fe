"""Exception types shared across the toolkit."""


class GraphError(Exception):
    """Base class for all toolkit errors."""


class ParseError(GraphError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SelfLoopError(GraphError):
    """An edge joins a node to itself."""


class RewiringError(GraphError):
    """A rewiring operation is not applicable to the current graph."""


class InvalidPairError(GraphError):
    """Two edges that share an endpoint were offered as a rewiring pair."""


class UndefinedMetricError(GraphError):
    """A metric's defining expression degenerates on this input."""


class DegenerateWeightsError(GraphError):
    """All sampling weights are zero; probabilistic selection impossible."""


class ConvergenceError(GraphError):
    """Iterative eigenvalue computation failed to reach tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual={residual:g})")
        self.residual = residual


class UndefinedRatioError(GraphError):
    """Approximation ratio requested against a zero optimum."""
