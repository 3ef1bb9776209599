"""Exception hierarchy.

Validation problems derive from ``ValidationError`` (CLI exit code 2),
numerical breakdowns from ``NumericalError`` (CLI exit code 3).
"""


class AntiflatError(Exception):
    pass


class ValidationError(AntiflatError, ValueError):
    pass


class NumericalError(AntiflatError, ArithmeticError):
    pass


class NotAProbabilityVector(ValidationError):
    pass


class AlphaOne(ValidationError):
    pass


class BadIndexOrder(ValidationError):
    pass


class DimMismatch(ValidationError):
    pass


class NonOrthonormalBasis(ValidationError):
    pass


class DimTooSmall(ValidationError):
    pass


class BadShape(ValidationError):
    pass


class BadDims(ValidationError):
    pass


class InfeasiblePurity(ValidationError):
    pass


class PreconditionUnmet(ValidationError):
    pass


class BadInterval(ValidationError):
    pass


class SupportMismatch(ValidationError):
    pass


class ZeroWeight(ValidationError):
    pass


class OutOfSupport(ValidationError):
    pass


class EigenFailure(NumericalError):
    pass


class SVDFailure(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class ChainNotConverged(NumericalError):
    pass


class DerivativeZero(NumericalError):
    pass
