"""Exception types shared across the package."""

from __future__ import annotations


class TvdError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatchError(TvdError):
    """Operands have incompatible shapes."""


class ClassificationError(TvdError):
    """A matrix fails a required property (square, Hermitian, unitary)."""


class MisuseError(TvdError):
    """A transform with the wrong linearity was passed to an operation."""


class PremiseError(TvdError):
    """An input violates a documented precondition of the check."""


class ParameterError(TvdError):
    """A model or CLI parameter is invalid."""


class ConfigError(TvdError):
    """The tolerance configuration is inconsistent."""


class ScenarioError(TvdError):
    """A scenario document is malformed.

    ``path`` names the offending location inside the document, for
    example ``requests[2].state`` or ``matrices.hamiltonian``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
