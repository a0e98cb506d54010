"""Exception types raised by the laboratory."""


class MaxlabError(Exception):
    """Base class for all laboratory errors."""


class ArityError(MaxlabError, ValueError):
    """An exponent point or exponent vector has the wrong length."""


class DimensionError(MaxlabError, ValueError):
    """The requested ambient dimension is not supported."""


class DomainError(MaxlabError, ValueError):
    """A parameter lies outside the domain of the operation."""


class PreconditionError(MaxlabError, ValueError):
    """Inputs violate a documented precondition."""


class DegenerateInputError(MaxlabError, ValueError):
    """A normalising quantity vanished or diverged."""


class UntypedCurveError(MaxlabError, ValueError):
    """Every probed derivative of the curve vanishes at the base point."""


class ConfigError(MaxlabError, ValueError):
    """An experiment configuration is incomplete or malformed."""


class AccuracyError(MaxlabError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    Attributes
    ----------
    value : float
        Best available estimate.
    error : float
        Estimated absolute error of ``value``.
    """

    def __init__(self, message, value=float("nan"), error=float("nan")):
        super().__init__(message)
        self.value = value
        self.error = error


class FitError(MaxlabError, ValueError):
    """A scaling fit could not be performed or is inconclusive.

    ``data`` carries whatever was measured before the failure so that
    callers can still write it out.
    """

    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data if data is not None else {}
