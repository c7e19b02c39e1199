"""Exception types shared across the package.

The CLI maps these onto process exit codes: configuration problems exit
with 2, infeasible requests with 3, and I/O failures (plain OSError)
with 4.
"""


class UewpiotError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(UewpiotError, ValueError):
    """A parameter, config key, or value is invalid or unknown."""


class GeometryError(UewpiotError, ValueError):
    """A link geometry is unphysical (e.g. slant range below hover height)."""


class InfeasibilityError(UewpiotError, RuntimeError):
    """A request cannot be satisfied (coverage, latency, or link limits)."""


class CapabilityError(UewpiotError, ValueError):
    """A solver was asked for more than it supports (e.g. exact tour size)."""
