"""Error types shared by the library and the command line."""

from typing import Any


class SynctransError(Exception):
    """Base class for every error raised by synctrans."""

    exit_code = 1

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class FormatError(SynctransError):
    """Malformed input: machine files, word or sequence literals, letters out of range."""

    exit_code = 2


class DomainError(SynctransError):
    """A well-formed input on which the requested operation is undefined or fails."""


class WordError(DomainError):
    pass


class DegenerateError(DomainError):
    """Some state has image size one (the Z_x case)."""


class NotSynchronizingError(DomainError):
    """The automaton is not strongly synchronizing."""


class BoundExceededError(DomainError):
    """A bounded exploration ran past its limit."""

    def __init__(self, bound_name: str, bound: int, message: str | None = None,
                 details: dict[str, Any] | None = None):
        text = message or f"{bound_name} bound exceeded ({bound})"
        merged = {"bound": bound_name, "value": bound}
        merged.update(details or {})
        super().__init__(text, merged)
        self.bound_name = bound_name
        self.bound = bound


class NotClopenError(DomainError):
    """A state image is not a finite union of cones."""


class NotInvertibleError(DomainError):
    pass


class MembershipError(DomainError):
    """The machine is outside the group an operation requires."""


class InvalidMarkerError(DomainError):
    pass


class RadiusInsufficientError(DomainError):
    """A window radius does not determine the output letter."""


class SignatureMismatchError(DomainError):
    """A value that must be state-independent differed between states."""
