"""Exception types shared across the package.

DomainError and its subclasses map to CLI exit code 1, ConfigError to exit
code 2.  Both derive from ValueError so callers that only know the stdlib
still catch something sensible.
"""


class PubecoError(ValueError):
    """Base class for all package errors."""


class DomainError(PubecoError):
    """A numeric argument is outside the mathematical domain of an operation."""


class UnattainablePowerError(DomainError):
    """Requested power cannot be reached within the allowed sample-size range."""


class UndefinedMetricError(DomainError):
    """A metric's denominator carries no mass (e.g. zero publication probability)."""


class ConfigError(PubecoError):
    """A configuration document or grid specification is invalid."""
