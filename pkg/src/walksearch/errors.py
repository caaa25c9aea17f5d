"""Exception types raised across the package."""


class WalkSearchError(Exception):
    """Base class for all package errors."""


class InstanceError(WalkSearchError, ValueError):
    """Invalid problem instance (vertex count or marked label)."""


class DimensionError(WalkSearchError, ValueError):
    """Operand shapes do not agree."""


class NumericError(WalkSearchError, ValueError):
    """Non-finite input or result."""


class ContractError(WalkSearchError, ValueError):
    """Input violates an operation's precondition (e.g. non-Hermitian)."""


class ConvergenceError(WalkSearchError, RuntimeError):
    """Iterative method did not converge within its cap."""


class DomainError(WalkSearchError, ValueError):
    """Argument outside the mathematical domain of a formula."""
