"""Exception types raised across the package."""


class QCCError(Exception):
    """Base class for all package errors."""


class NonInvertible(QCCError, ArithmeticError):
    pass


class NonCoprimeModuli(QCCError, ValueError):
    pass


class NoSuchRoot(QCCError, ValueError):
    pass


class NotSeparatelyCyclic(QCCError, ValueError):
    pass


class InvalidTriple(QCCError, ValueError):
    pass


class NotIsotropic(QCCError, ValueError):
    pass


class MinusIdentityInGroup(QCCError, RuntimeError):
    pass


class SigmaConditionViolated(QCCError, ValueError):
    pass


class GNotDivisible(QCCError, ValueError):
    pass


class SelfPairedFactorOutsideG(QCCError, ValueError):
    pass


class DecodingFailure(QCCError, RuntimeError):
    """Raised when the syndrome is inconsistent with an error of weight <= t."""


class DescriptorError(QCCError, ValueError):
    pass


class BudgetExceeded(QCCError, RuntimeError):
    """Enumeration would exceed the element budget.

    ``lower_bound`` is the best distance lower bound established before giving up.
    """

    def __init__(self, message: str, lower_bound: int = 1):
        super().__init__(message)
        self.lower_bound = lower_bound
