"""Exception hierarchy shared by all modules."""


class RindlerDickeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RindlerDickeError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(DomainError):
    """Argument sits on a pole of the Gamma function."""


class NonConvergence(RindlerDickeError, ArithmeticError):
    """A series or extrapolation failed to reach its tolerance."""


class SizeError(DomainError):
    """Requested enumeration exceeds the supported size."""


class ConfigError(RindlerDickeError, ValueError):
    """Invalid command-line or file configuration."""
