"""
Errors
======
Exception hierarchy shared by the library and the CLI.

Library code raises these; only ``liestat.cli.main`` maps them to exit codes:

    InputError             -> 2   (unparseable or out-of-range input)
    ValidationError        -> 3   (a named mathematical invariant failed)
    NumericAmbiguityError  -> 4   (rank decision too close to the threshold)
"""

from __future__ import annotations


class LiestatError(Exception):
    """Base class for every error raised by liestat."""

    exit_code: int = 1


class InputError(LiestatError):
    """Malformed document, bad flag, invalid preset parameter or shape mismatch."""

    exit_code = 2


class ValidationError(LiestatError):
    """An algebra, metric or structure invariant does not hold."""

    exit_code = 3

    def __init__(self, invariant: str, message: str) -> None:
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class NumericAmbiguityError(LiestatError):
    """
    A singular value sits within the ambiguity band around the rank threshold,
    so the kernel dimension cannot be decided reliably.
    """

    exit_code = 4

    def __init__(self, value: float, threshold: float, factor: float) -> None:
        super().__init__(
            f"singular value {value:.3e} lies within {factor:g}x of the rank "
            f"threshold {threshold:.3e}; kernel dimension is ambiguous"
        )
        self.value = value
        self.threshold = threshold
        self.factor = factor
