"""Shared numeric tolerances and validation error types."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Validation thresholds used across the package.

    herm   : entrywise Hermiticity deviation allowed in a density matrix
    trace  : allowed |trace - 1|
    psd    : most negative eigenvalue allowed (as -psd)
    norm   : allowed |<psi|psi> - 1| for state vectors
    tail   : truncation tail weight above which state constructors reject
    """

    herm: float = 1e-12
    trace: float = 1e-10
    psd: float = 1e-10
    norm: float = 1e-10
    tail: float = 1e-10

    def with_overrides(self, **kwargs: float) -> "Tolerances":
        """Return a copy with the given fields replaced."""
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = Tolerances()


class NumericValidationError(ValueError):
    """Input is syntactically fine but numerically inadmissible."""


class TruncationTailError(NumericValidationError):
    """Discarded tail weight exceeds the allowed truncation tolerance."""


class GridCompatibilityError(NumericValidationError):
    """Grid too coarse (or otherwise incompatible) for the requested dimension."""


class InconsistentInputError(NumericValidationError):
    """Data violates an internal consistency requirement beyond tolerance."""


class FormatError(ValueError):
    """A serialized artifact could not be parsed."""
