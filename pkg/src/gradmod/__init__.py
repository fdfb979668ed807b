"""Depth and Hilbert series of associated graded modules of MCM modules over hypersurfaces."""

from __future__ import annotations

from .analysis import CertificationLog, analyze
from .errors import (
    CertificationError,
    GradmodError,
    IdentityViolation,
    InconclusiveError,
    PresentationError,
    TruncationError,
)
from .inputfile import InputFile, parse_input, render
from .invariants import HPolynomial, InvariantReport
from .poly import DEFAULT_PRIME, MultiPolynomial, parse_polynomial
from .truncated import Presentation
from .verdicts import Verdict, classify

__version__ = "0.1.0"

__all__ = [
    "analyze", "CertificationLog", "CertificationError", "GradmodError", "IdentityViolation",
    "InconclusiveError", "PresentationError", "TruncationError", "InputFile", "parse_input",
    "render", "HPolynomial", "InvariantReport", "DEFAULT_PRIME", "MultiPolynomial",
    "parse_polynomial", "Presentation", "Verdict", "classify",
]
