"""Exception hierarchy.

Every error raised by the library derives from :class:`NPInfoError`, which
is itself a :class:`ValueError`, so callers that only care about bad input
can catch the builtin.
"""

from __future__ import annotations


class NPInfoError(ValueError):
    """Base class for all library errors."""


# -- distribution construction and manipulation ----------------------------

class NegativeProbability(NPInfoError):
    pass


class NormalizationError(NPInfoError):
    pass


class ShapeMismatch(NPInfoError):
    pass


class NotABijection(NPInfoError):
    pass


class EmptyKeepSet(NPInfoError):
    pass


class BadAxisIndex(NPInfoError):
    pass


class BadLabel(NPInfoError):
    pass


class ZeroConditioningEvent(NPInfoError):
    pass


class AxisNameCollision(NPInfoError):
    pass


class AxisMismatch(NPInfoError):
    pass


class IncompleteMap(NPInfoError):
    pass


# -- partitions and blocks -------------------------------------------------

class InvalidPartition(NPInfoError):
    pass


class OverlappingBlocks(NPInfoError):
    pass


class BlockMismatch(NPInfoError):
    pass


class InvalidTree(NPInfoError):
    pass


class OutOfRange(NPInfoError):
    pass


# -- sufficiency -----------------------------------------------------------

class NoBaselineCorrelation(NPInfoError):
    """The reference (denominator) information is numerically zero."""


class NotBinaryTheta(NPInfoError):
    pass


class ZeroMarginal(NPInfoError):
    pass


# -- maxent ----------------------------------------------------------------

class InfeasibleConstraint(NPInfoError):
    pass


class NotConverged(NPInfoError):
    """Raised by ``maxent_update(..., strict=True)``; carries the partial result."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


# -- io --------------------------------------------------------------------

class ParseError(NPInfoError):
    pass


class UnknownLabel(NPInfoError):
    pass


class EmptyTable(NPInfoError):
    pass
