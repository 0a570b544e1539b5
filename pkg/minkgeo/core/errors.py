"""Exception hierarchy shared by every minkgeo module.

Each exception carries the process exit code the command-line front end
uses when the error escapes a command.
"""

from typing import Any, Dict


class GeometryError(Exception):
    """Base class for all minkgeo errors."""

    exit_code: int = 1

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        """Serializable description used by the CLI and the HTTP layer."""
        return {"error": type(self).__name__, "message": self.message, **self.context}


class PreconditionError(GeometryError):
    """A domain precondition of an operation does not hold."""

    exit_code = 3


class SignatureMismatch(PreconditionError):
    """Operands live in different pseudo-Euclidean spaces."""


class DependentInput(PreconditionError):
    """Input vectors are linearly dependent."""


class DegenerateChain(PreconditionError):
    """An intermediate span of the Gram-Schmidt chain is degenerate."""


class DegeneratePoint(PreconditionError):
    """The tangent plane of a surface is lightlike at the requested point."""


class ZeroDivisorError(PreconditionError):
    """Inverse requested for a zero divisor of a generalized number system."""


class PoleError(PreconditionError):
    """A grid point or an integration path meets a declared pole."""


class NumericalFailure(GeometryError):
    """A numerical procedure could not reach the requested accuracy."""

    exit_code = 4
