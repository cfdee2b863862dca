"""Exception types shared across the package."""


class MVCError(Exception):
    """Base class for every error raised by this package."""


class GuardExceeded(MVCError, ValueError):
    pass


class CtxMismatch(MVCError, ValueError):
    pass


class DivisionByZero(MVCError, ZeroDivisionError):
    pass


class NotFound(MVCError, LookupError):
    pass


class NotInM2(MVCError, ValueError):
    """m is not an odd number with exactly two distinct prime divisors."""

    def __init__(self, m, structure):
        super().__init__(f"{m} is not in M_2: {structure}")
        self.m = m
        self.structure = structure


class ModuliNotCoprime(MVCError, ValueError):
    pass


class ZeroResidue(MVCError, ValueError):
    pass


class DomainViolation(MVCError, ValueError):
    pass


class InternalContradiction(MVCError, RuntimeError):
    """A proof-guaranteed identity failed; always a bug upstream."""


class NotDivisible(MVCError, ValueError):
    pass


class PrimeSetMismatch(MVCError, ValueError):
    pass


class PreconditionCollisionInvalid(MVCError, ValueError):
    pass


class DescentDegenerate(MVCError, ValueError):
    pass


class RelationNotFound(MVCError, LookupError):
    pass


class NotGood(MVCError, ValueError):
    pass


class LengthMismatch(MVCError, ValueError):
    pass


class IndexOutOfRange(MVCError, IndexError):
    pass


class BudgetExceeded(MVCError, ValueError):
    pass


class CodewordFormatError(MVCError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
