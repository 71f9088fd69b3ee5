"""Exception hierarchy shared by every module of the package."""


class XericError(Exception):
    """Base class for all errors raised by :mod:`xeric`."""


class DivisionByZero(XericError, ZeroDivisionError):
    pass


class NotAPthPower(XericError, ValueError):
    pass


class IndexOutOfRange(XericError, IndexError):
    pass


class NegativeExponentAtZero(XericError, ValueError):
    pass


class NonUnitLeadingCoefficient(XericError, ArithmeticError):
    pass


class IrregularSingularity(XericError, ValueError):
    pass


class NotSplit(XericError, ValueError):
    pass


class DegenerateIndicial(XericError, ValueError):
    pass


class NonConvergence(XericError, RuntimeError):
    pass


# the fixed-point solver in decomp reports the same condition under this name
NoConvergence = NonConvergence


class SingularSectionMatrix(XericError, ArithmeticError):
    pass


class CharacteristicTwo(XericError, ValueError):
    pass


class NonPositiveOrder(XericError, ValueError):
    pass


class InsufficientPrecision(XericError, ValueError):
    pass


class WeightMismatch(XericError, ValueError):
    pass


class TooLarge(XericError, ValueError):
    pass


class NotInSp(XericError, ValueError):
    pass


class UnsupportedExponent(XericError, ValueError):
    pass


class NotPolynomial(XericError, ValueError):
    """A result that should live in F_p[z] picked up a negative z-exponent."""


class CartierMismatch(XericError, AssertionError):
    """Curvature test and division test disagree."""
