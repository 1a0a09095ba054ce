"""Exception types raised across the package."""


class QSingletError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(QSingletError, ZeroDivisionError):
    pass


class PoleAtPoint(QSingletError, ZeroDivisionError):
    """The denominator of a rational function vanishes at the evaluation point."""


class NonpositiveParameter(QSingletError, ValueError):
    """A deformation parameter that must be positive was not."""


class ParseError(QSingletError, ValueError):
    pass


class DimensionMismatch(QSingletError, ValueError):
    pass


class BasisMismatch(DimensionMismatch):
    pass


class SingularMatrix(QSingletError, ArithmeticError):
    pass


class UnexpectedKernelDimension(QSingletError, ArithmeticError):
    pass


class NoSolution(QSingletError, ArithmeticError):
    pass


class NotInvolutory(QSingletError, ValueError):
    """Observable does not square to one quarter of the identity."""


class DegeneratePairing(QSingletError, ZeroDivisionError):
    pass


class UnknownClaim(QSingletError, KeyError):
    pass


class UnsupportedFormat(QSingletError, ValueError):
    pass
