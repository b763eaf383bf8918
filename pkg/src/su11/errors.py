"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input lies outside the domain of a map or structure (e.g. not admissible)."""


class ChartError(ValueError):
    """Unsupported (structure, chart) pair or mismatched space."""


class ShapeError(ValueError):
    """A matrix does not lie in the requested space.

    The offending residual is kept on the instance so callers can report it.
    """

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class FlowError(DomainError):
    """Integration left the admissible cone."""

    def __init__(self, message, t):
        super().__init__(f"{message} at t={t:.6g}")
        self.t = t
