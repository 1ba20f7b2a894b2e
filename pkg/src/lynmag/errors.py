"""Shared exception types."""


class ConsistencyError(RuntimeError):
    """An internal mathematical invariant failed.

    Raised when two independent computation routes disagree, when a
    guaranteed divisibility does not hold, or when a structural fact
    (triangularity, an exact identity) fails on computed data.  This is
    never a user-input problem: it means the mathematics and the code
    disagree somewhere, and the computation must not continue silently.
    """
