"""Exception hierarchy shared by every module."""


class QError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomialError(QError, ZeroDivisionError):
    """An operation needed a nonzero polynomial and got zero."""


class NotExactError(QError, ArithmeticError):
    """A division that should be exact left a remainder."""


class PreconditionError(QError, ValueError):
    """Inputs fall outside the domain of the requested operation."""


class SearchExhaustedError(QError, LookupError):
    """A bounded search found no witness inside its window."""


class IdentityViolation(QError, AssertionError):
    """A proven identity failed on concrete input.

    Raised instead of returning a wrong answer; it always indicates a bug in
    this package (or a counterexample worth reporting).
    """
