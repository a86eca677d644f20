"""Exception hierarchy shared by the package."""


class SteinFrechetError(Exception):
    """Base class for every error raised by steinfrechet."""

    code = "error"


class DomainError(SteinFrechetError, ValueError):
    code = "domain"


class PoleError(DomainError):
    code = "pole"


class DivergenceError(DomainError):
    code = "divergent"


class ParameterError(SteinFrechetError, ValueError):
    code = "parameter"


class AssumptionError(SteinFrechetError, ArithmeticError):
    """A law violates the cdf/density model (atom + positive continuous density)."""

    code = "assumption"


class PreconditionError(SteinFrechetError, ValueError):
    code = "precondition"


class InfiniteMeanError(PreconditionError):
    code = "infinite_mean"


class InversionError(SteinFrechetError, ArithmeticError):
    code = "inversion"


class QuadratureError(SteinFrechetError, ArithmeticError):
    """Subdivision budget exhausted; ``result`` holds the best estimate."""

    code = "quadrature"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
