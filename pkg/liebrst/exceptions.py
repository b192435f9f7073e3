"""Lie BRST Exceptions."""

from __future__ import annotations


class LieBrstError(Exception):
    """Base class for Lie BRST errors."""


class ConfigError(LieBrstError):
    """Exception raised when configuration values are invalid."""


class ShapeError(LieBrstError):
    """Exception raised when matrix or tensor dimensions do not match."""


class SingularMatrixError(LieBrstError):
    """Exception raised when an invertible matrix was required."""


class AsymmetricMatrixError(LieBrstError):
    """Exception raised when a symmetric matrix was required."""


class NonFiniteError(LieBrstError):
    """Exception raised when a float matrix holds NaN or Inf entries."""


class DomainError(LieBrstError):
    """Exception raised when a parameter lies outside the family domain."""


class PreconditionError(LieBrstError):
    """Exception raised when an operation precondition fails."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None) -> None:
        """Precondition error init."""
        super().__init__(message)
        self.pair = pair


class JacobiError(LieBrstError):
    """Exception raised when a bracket violates antisymmetry or Jacobi."""

    def __init__(
        self, message: str, violations: tuple[tuple[int, int, int, int], ...] = ()
    ) -> None:
        """Jacobi error init."""
        super().__init__(message)
        self.violations = violations


class RepresentationError(LieBrstError):
    """Exception raised when matrices do not represent the bracket."""


class ParseError(LieBrstError):
    """Exception raised when algebra documents cannot be parsed."""

    def __init__(self, message: str, line: int, column: int) -> None:
        """Parse error init."""
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class InputError(LieBrstError):
    """Exception raised when command line values or files are invalid."""
