"""Exception hierarchy.  ``exit_code`` is what the command line returns."""

from __future__ import annotations


class GradmodError(Exception):
    exit_code = 1


class PresentationError(GradmodError, ValueError):
    """The matrix does not define a valid minimal presentation."""

    exit_code = 1


class TruncationError(GradmodError):
    """A degree outside the certified window was requested."""

    exit_code = 2


class InconclusiveError(GradmodError):
    """The largest allowed window did not settle the computation."""

    exit_code = 2


class CertificationError(GradmodError):
    """No certified superficial element was found."""

    exit_code = 3

    def __init__(self, message: str, diagnostics: list | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class IdentityViolation(GradmodError):
    """A proven identity failed; this signals a bug."""

    exit_code = 4

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}
