"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`ContactSexticError`.  The CLI maps :class:`MathDomainError` to its
own exit code, so anything that means "the mathematics does not allow this
input" should subclass it.
"""


class ContactSexticError(Exception):
    """Base class for all package errors."""


class MathDomainError(ContactSexticError, ValueError):
    """Input lies outside the domain where an operation is defined."""


# exact algebra
class ZeroDegree(MathDomainError):
    pass


class ZeroLeadingCoefficient(MathDomainError):
    pass


class ZeroPolynomial(MathDomainError):
    pass


class UnboundVariable(MathDomainError):
    pass


class InexactDivision(ContactSexticError, ArithmeticError):
    """An exact division left a nonzero remainder."""


# contact geometry
class ClosureFailure(ContactSexticError):
    """A bracket of algebra generators left their linear span."""


class DegenerateMap(MathDomainError):
    pass


class VerticalCurve(MathDomainError):
    pass


class DegenerateDenominator(MathDomainError):
    pass


# curves and families
class NotOnCurve(MathDomainError):
    pass


class SingularBranch(MathDomainError):
    pass


class NonZeroDimensional(MathDomainError):
    pass


class CoincidentPoints(MathDomainError):
    pass


class InadmissibleQuartic(MathDomainError):
    pass


class DegenerateLeading(MathDomainError):
    pass


class DegenerateConic(MathDomainError):
    pass


# numerics
class SingularJet(MathDomainError):
    pass


class StepLimitExceeded(ContactSexticError):
    pass


class SingularJacobian(ContactSexticError):
    pass


class MaxIterations(ContactSexticError):
    pass


class BranchSelectionFailure(MathDomainError):
    pass
