"""Exception types shared across the solver suite."""


class VcewError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(VcewError):
    """Malformed instance text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(VcewError):
    """An object violates a structural contract (bad assignment, bad decomposition, ...)."""


class CapacityError(VcewError):
    """The requested exhaustive search is larger than the configured ceiling."""


class UnsupportedVariantError(VcewError):
    """Input falls outside the variant a solver handles (e.g. 0-pre-weights in the all-ones pipeline)."""


class ContractViolationError(VcewError):
    """A caller-supplied certificate or intermediate result failed re-verification."""
