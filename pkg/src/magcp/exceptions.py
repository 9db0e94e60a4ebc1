"""Exception types shared across modules."""


class MagcpError(Exception):
    """Base class for all package-specific errors."""


class ConvergenceError(MagcpError):
    """A series or quadrature failed to reach the requested tolerance."""


class ValidationError(MagcpError, ValueError):
    """Invalid input data or configuration; message names the offending key."""
