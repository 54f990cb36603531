"""Exception hierarchy shared by every qrlab module."""


class QRLabError(Exception):
    """Base class for all qrlab errors."""


class ValidationError(QRLabError, ValueError):
    """Input rejected before any computation took place."""


class NotPrime(ValidationError):
    pass


class NotOdd(ValidationError):
    pass


class SamePrime(ValidationError):
    pass


class EvenOrder(ValidationError):
    pass


class ZeroInverse(QRLabError, ZeroDivisionError):
    pass


class ModulusMismatch(QRLabError, ValueError):
    pass


class ModeMismatch(QRLabError, ValueError):
    pass


class InternalInconsistency(QRLabError, AssertionError):
    """A mathematical invariant failed; this always indicates a bug."""


class BudgetExceeded(QRLabError):
    """A configured work budget would be exceeded."""


class FactoringBudgetExceeded(BudgetExceeded):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class OrderBudgetExceeded(BudgetExceeded):
    pass
