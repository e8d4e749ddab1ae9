"""Exception hierarchy shared by every layer of the package."""


class PrecisionError(ArithmeticError):
    """Base class for failures caused by insufficient p-adic precision."""


class DivisionByIndistinguishableZero(PrecisionError, ZeroDivisionError):
    def __init__(self, msg="cannot divide by something indistinguishable from zero."):
        super().__init__(msg)


class DivisionByZero(ZeroDivisionError):
    """Division of a floating p-adic number by an exact zero."""


class UnknownVariable(KeyError):
    """The variable is not (or no longer) registered in the precision module."""


class DeficientRank(ValueError):
    """A projected precision module does not have full rank."""


class UnsupportedInMode(NotImplementedError):
    """The query is not available in the tracking mode of the module."""


class NotInRing(ValueError):
    """A value of negative valuation was requested in an integer ring."""


class MixedRings(TypeError):
    """Elements of two different rings were combined."""
