"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CantorWaringError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(CantorWaringError, ValueError):
    """A parameter violates a documented precondition."""


class MalformedIntervalError(InvalidParameterError):
    """An interval was given with lo > hi."""


class DomainError(InvalidParameterError):
    """A point lies outside the domain of a map."""


class InvalidConfigurationError(InvalidParameterError):
    """A split configuration uses an endpoint that is not a valid basic-interval left end."""


class UnsupportedParityError(InvalidParameterError):
    """The closed-form ternary bound is only defined for even s."""


class ZeroDenominatorError(InvalidParameterError):
    """A displayed bound formula divides by zero for these exponents."""


class ResourceLimitError(CantorWaringError):
    """An enumeration would exceed its configured cap."""


class UnsupportedVersionError(CantorWaringError, ValueError):
    """A serialized payload carries an unknown schema version."""
