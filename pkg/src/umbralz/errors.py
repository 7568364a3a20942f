"""Exception types shared across the package."""


class UmbralError(Exception):
    pass


class NotInvertible(UmbralError, ZeroDivisionError):
    """Series with zero constant term has no multiplicative inverse."""


class NotDeltaSeries(UmbralError, ValueError):
    pass


class CompositionOrderError(UmbralError, ValueError):
    """Inner series of a composition has a nonzero constant term."""


class TruncationExhausted(UmbralError, ValueError):
    """A series is not known to enough terms for the requested result."""


class InternalCrossCheckFailure(UmbralError, AssertionError):
    """Two independent routes to the same quantity disagree.

    This always signals an arithmetic bug and is never recovered from.
    """


class InvalidPrime(UmbralError, ValueError):
    pass


class PrimeMismatch(UmbralError, ValueError):
    pass


class BudgetExceeded(UmbralError, RuntimeError):
    pass
