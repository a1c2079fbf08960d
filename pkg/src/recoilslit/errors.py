"""Exception hierarchy shared by the library and the CLI."""


class RecoilSlitError(Exception):
    """Base class for all errors raised by this package."""


class NormalizationError(RecoilSlitError, ValueError):
    """A state or coefficient pair is not normalized.

    ``deficit`` is ``1 - sum(|c_i|^2)``.
    """

    def __init__(self, message, deficit):
        super().__init__(message)
        self.deficit = deficit


class ConsistencyError(RecoilSlitError, ArithmeticError):
    """An internal numerical invariant failed (points at a bug, not bad input)."""


class DomainError(RecoilSlitError, ValueError):
    """Input outside the physical domain, e.g. an overlap with modulus above one."""


class CoverageError(RecoilSlitError, ValueError):
    """A grid is too small for the geometry it is asked to sample."""

    def __init__(self, message, required_extent):
        super().__init__(message)
        self.required_extent = required_extent


class DegeneratePatternError(RecoilSlitError, ValueError):
    """Visibility is undefined because the intensities vanish."""


class ChainViolation(RecoilSlitError, AssertionError):
    """One inequality of the uncertainty/duality chain failed."""

    def __init__(self, message, inequality):
        super().__init__(message)
        self.inequality = inequality
