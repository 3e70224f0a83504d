"""Errors for cable_cone."""

from typing import Any, Dict, List, Optional


class CableConeError(Exception):
    """Base class for cable_cone errors"""


class CfkParseError(CableConeError):
    """Error when a knot complex file can't be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        if line_number is not None:
            message = f"line {line_number}: {message}"

        super().__init__(message)
        self.line_number = line_number


class ComplexValidationError(CableConeError):
    """Error when a knot complex fails validation."""

    def __init__(self, diagnostics: List[str]) -> None:
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


class WindowError(CableConeError):
    """Error when a truncation window is too small for the input complex."""


class FlipMapError(CableConeError):
    """Error when no generator-level reflection symmetry exists."""


class UnexpectedHomologyError(CableConeError):
    """Error when a complex does not have a single Laurent tower in homology."""


class NonIntegralDropError(CableConeError):
    """Error when a filtration drop can't be written as a U/V exponent."""


class StandardizationIncomplete(CableConeError):
    """Error when basis changes stop before reaching a standard complex."""

    def __init__(self, message: str, partial: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.partial = partial or {}


class SearchLimitExceeded(CableConeError):
    """Error when the local map search space is above the configured ceiling."""


class PhiMismatchError(CableConeError):
    """Error when R_U and R_V edge counts give different phi tables."""
