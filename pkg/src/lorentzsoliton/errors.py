"""Exception hierarchy shared by every module."""


class GeometryError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(GeometryError, ValueError):
    """Non-finite or otherwise invalid evaluation point."""


class ParameterError(GeometryError, ValueError):
    """Invalid numerical parameter (step size, horizon, ...)."""


class SpecError(GeometryError, ValueError):
    """Metric parameters violate the family hypotheses."""


class UnsupportedFamilyError(GeometryError):
    """Operation is only defined for a different metric family."""


class DegeneracyError(GeometryError, ArithmeticError):
    """Metric determinant too close to zero to invert."""


class BlowUpError(GeometryError, ArithmeticError):
    """Integration produced a non-finite state."""

    def __init__(self, message, last_t):
        super().__init__(message)
        self.last_t = last_t


class ConfigError(GeometryError, ValueError):
    """Invalid suite configuration; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
