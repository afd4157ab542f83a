"""Exception hierarchy shared across the package."""


class HermsubError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(HermsubError):
    pass


class NotStronglyInvertible(HermsubError):
    """Determinant of the symbol is not a nonzero monomial."""


class SupportTooShort(HermsubError):
    pass


class NoSimpleEigenvalueOne(HermsubError):
    """1 is not a simple eigenvalue of the mask symbol at the origin."""


class SingularResonance(HermsubError):
    """I - 2^j * symbol(0) is singular, so the matching-filter recursion stalls."""

    def __init__(self, order: int, message: str | None = None):
        self.order = order
        super().__init__(message or f"1 - 2^{order} a^(0) is singular")


class PolyInvarianceViolated(HermsubError):
    """The subdivision image of this polynomial is not a polynomial sequence."""


class InsufficientSumRules(HermsubError):
    pass


class DivisionNotExact(HermsubError):
    """Internal consistency failure: a guaranteed-exact division left a remainder."""


class Infeasible(HermsubError):
    """The linear system for a mask construction has no solution."""


class MaskFormatError(HermsubError):
    pass
