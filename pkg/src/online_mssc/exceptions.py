"""
Custom exceptions for the online MSSC toolkit.

This module contains all exception classes raised by the simulator, the
potential-function auditors, the offline oracles and the experiment harness.
"""


class MsscError(Exception):
    """Base exception for all online MSSC errors."""

    pass


class EmptyRequestError(MsscError):
    """Raised when a request contains no elements."""

    pass


class UnknownElementError(MsscError):
    """Raised when an element id is outside the universe 0..n-1."""

    pass


class DomainMismatchError(MsscError):
    """Raised when two permutations or states live on different universes."""

    pass


class InvalidPositionError(MsscError):
    """Raised when a list position is smaller than 1."""

    pass


class OracleTooLargeError(MsscError):
    """Raised when a brute-force oracle is asked for an instance above its ceiling."""

    pass


class TraceMismatchError(MsscError):
    """Raised when a trace does not belong to the instance it is paired with."""

    pass


class IllegalChoiceError(MsscError):
    """Raised when an MTF-based choice is not an element of its step's request."""

    pass


class ScheduleMismatchError(MsscError):
    """Raised when a recorded phase schedule does not follow the cyclic partition."""

    pass


class BadConfigError(MsscError):
    """Raised when generator or experiment parameters are invalid."""

    pass


class RequiresRAtLeast2Error(BadConfigError):
    """Raised when the lower-bound construction is requested with r = 1."""

    pass


class AuditRequiresBaselineError(MsscError):
    """Raised when an audit is started without an auditable offline baseline."""

    pass


class InstanceFormatError(MsscError):
    """Raised when an instance file cannot be parsed or violates an invariant."""

    pass


class InvariantViolationError(MsscError):
    """Raised when an instrumented algorithm invariant does not hold."""

    pass
