"""Exception hierarchy for outagekit.

Every error raised on purpose by this package derives from OutageKitError,
so callers can catch one type at an API boundary. DomainError doubles as a
ValueError for code that only knows the stdlib taxonomy.
"""


class OutageKitError(Exception):
    """Base class for all outagekit errors."""


class DomainError(OutageKitError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class UnsupportedRegionError(OutageKitError):
    """The requested computation has no closed form for this region kind.

    Raised when a closed-form path is asked for a multi-polygon; callers
    should switch to the grid or sample method.
    """


class SamplingError(OutageKitError, RuntimeError):
    """Rejection sampling exhausted its miss budget without accepting a point."""


class SeriesError(OutageKitError, RuntimeError):
    """A series failed to converge within its term cap.

    The partial sum accumulated so far is carried in ``partial`` for
    diagnostic use; it is not trustworthy as a result.
    """

    def __init__(self, message: str, partial: float | None = None):
        super().__init__(message)
        self.partial = partial
