"""Exception types shared across the package."""


class AlphaFamilyError(Exception):
    """Base class for all errors raised by this package."""


class PredicateError(AlphaFamilyError):
    """A predicate was called with invalid arguments (e.g. repeated labels)."""


class DegenerateSimplexError(AlphaFamilyError):
    """A radius or attachment formula hit a zero denominator (collinear or
    coplanar raw input).  Unreachable from the perturbed pipeline."""


class ScheduleExhaustedError(AlphaFamilyError):
    """Every coefficient of a perturbation schedule vanished.  The schedule
    construction guarantees a nonzero term, so this indicates a bug."""


class InputError(AlphaFamilyError):
    """Bad user input: malformed point file, duplicate points, too few points."""


class DegenerateInputError(AlphaFamilyError):
    """The input has affine rank below 3 (all points coplanar or collinear)."""

    def __init__(self, rank: int):
        self.rank = rank
        super().__init__(f"input spans an affine subspace of rank {rank}; rank 3 required")


class OnThresholdError(AlphaFamilyError):
    """A query alpha coincides with a spectrum threshold; pick an interval
    index instead."""


class NotApplicableError(AlphaFamilyError):
    """The operation is undefined for this simplex (e.g. local Delaunay test
    on a hull triangle)."""
