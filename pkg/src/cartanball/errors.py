"""Exception hierarchy.

Every error raised by the package derives from :class:`CartanError`, so callers
(the command line in particular) can catch the family at once and map each
subclass onto an exit code.
"""


class CartanError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CartanError, ValueError):
    pass


class ParseError(CartanError, ValueError):
    pass


class NotHermitian(CartanError, ValueError):
    pass


class NotPositive(CartanError, ValueError):
    pass


class Singular(CartanError, ArithmeticError):
    pass


class SingularFactor(Singular):
    """``I + B*A`` is numerically singular inside a Moebius map."""


class SingularDenominator(Singular):
    """``T21 A + T22`` is numerically singular in the ball action."""


class NotUnitary(CartanError, ValueError):
    pass


class NotStrictContraction(CartanError, ValueError):
    pass


class SquareDims(CartanError, ValueError):
    """Raised when ``m == n``; the construction assumes different dimensions."""


class NotAMember(CartanError, ValueError):
    """The matrix fails the pseudo-unitary relations.

    ``residuals`` carries the six relation residuals for reporting.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})


class ReconstructionFailure(CartanError, ArithmeticError):
    pass


class ZeroVector(CartanError, ValueError):
    pass


class PreconditionFailed(CartanError, ValueError):
    """An operation was called on an element outside its domain
    (e.g. fixed-point enumeration on a non-normal isometry)."""


class InternalInconsistency(CartanError, AssertionError):
    """Two routes that must agree (structural vs brute force) disagree."""


class StructureResidual(CartanError, ArithmeticError):
    pass


class InconsistentPair(CartanError, ValueError):
    pass


class SpectrumMismatch(CartanError, ArithmeticError):
    pass


class DegenerateBlockGauge(CartanError, ArithmeticError):
    pass


class IllConditionedEigenbasis(CartanError, ArithmeticError):
    pass


class NotABasis(CartanError, ValueError):
    pass


class KTooLarge(CartanError, ValueError):
    pass
