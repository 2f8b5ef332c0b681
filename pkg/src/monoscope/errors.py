"""Exception hierarchy.

Public functions never raise bare ValueError; everything user-facing derives
from MonoscopeError so the CLI can map failures to exit codes.
"""


class MonoscopeError(Exception):
    """Base error for this package."""


class InputError(MonoscopeError, ValueError):
    """Inputs violate a contract: shape, dimension, domain or file format."""


class UndefinedSumError(MonoscopeError, ArithmeticError):
    """The forbidden extended-real form (+inf) + (-inf) was requested."""


class ImproperValueError(MonoscopeError):
    """A requested quantity is improper (identically -inf on its domain)."""


class UnsupportedOracleError(MonoscopeError):
    """The analytic oracle does not support the requested configuration."""


class SimplexError(MonoscopeError):
    """The internal LP solver failed (cycling guard exceeded)."""
