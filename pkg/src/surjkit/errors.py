"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class StructuralError(ValueError):
    """Arities or shapes of composed objects do not line up."""


class ResourceError(RuntimeError):
    """A configured cap (depth, bracket expansion, target budget) was hit."""


class NoSolutionError(ValueError):
    """The equation has no solution (e.g. solving against the zero span)."""


class DegenerateMemberError(ValueError):
    """A vector span member has a coordinate that cancels to the zero span.

    Carries the 0-based index of the first vanishing coordinate.
    """

    def __init__(self, coordinate: int):
        self.coordinate = coordinate
        super().__init__(
            f"member is degenerate at coordinate {coordinate + 1}: the reduced "
            f"span of that coordinate is the zero function (see detect_degenerate)"
        )


class RefinementError(RuntimeError):
    """Preimage refinement exhausted its budget before reaching the tolerance.

    Carries the best witness found and the residual it achieved.
    """

    def __init__(self, message: str, best_witness=None, achieved: float | None = None):
        self.best_witness = best_witness
        self.achieved = achieved
        super().__init__(message)
