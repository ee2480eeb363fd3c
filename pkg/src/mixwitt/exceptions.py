class MixwittError(Exception):
    """Base class of every error raised by mixwitt."""

    ...

class InvalidInputError(MixwittError):
    """Raised when an input violates a precondition; the CLI exits with code 2."""

    ...

class SearchBudgetExceeded(MixwittError):
    """Raised when a bounded search ran out of candidates; raise the budget. CLI exit code 3."""

    ...

class CoverSearchFailed(SearchBudgetExceeded):
    """Raised when no multiplier in the pool yields the union of two principal sets."""

    ...

class ParseError(MixwittError):
    """Raised when parsing fails. CLI exit code 4."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

class NotMonic(InvalidInputError):
    """Raised when a defining polynomial is not monic."""

    ...

class NotSquarefree(InvalidInputError):
    """Raised when gcd(f, f') is not constant."""

    ...

class ReducibleDetected(InvalidInputError):
    """Raised when a nontrivial factor of the defining polynomial was found."""

    ...

class DegreeTooLarge(InvalidInputError):
    """Raised when the defining polynomial exceeds the supported degree."""

    ...

class DivisionByZero(InvalidInputError, ZeroDivisionError):
    """Raised when dividing a field element by zero."""

    ...

class FieldMismatch(InvalidInputError):
    """Raised when operands live in different number fields."""

    ...

class AlgebraMismatch(InvalidInputError):
    """Raised when operands live in different quaternion algebras."""

    ...

class ZeroElement(InvalidInputError):
    """Raised when a nonzero field element is required."""

    ...

class ZeroScale(ZeroElement):
    """Raised when scaling a form by zero."""

    ...

class ZeroSlot(ZeroElement):
    """Raised when a Pfister slot is zero."""

    ...

class ZeroArgument(ZeroElement):
    """Raised when a Hilbert symbol argument is zero."""

    ...

class NonRationalField(InvalidInputError):
    """Raised when an operation that only exists over Q receives another field."""

    ...

class NotPure(InvalidInputError):
    """Raised when a pure quaternion is required."""

    ...

class NotInvertible(InvalidInputError):
    """Raised when a quaternion has zero reduced norm."""

    ...

class NoAnisotropicVector(InvalidInputError):
    """Raised when no anisotropic vector exists in an anticommuting plane."""

    ...

class WrongStratum(InvalidInputError):
    """Raised when an ordering lies in the wrong part of the X_1 / X_-1 partition."""

    ...

class DegenerateReference(InvalidInputError):
    """Raised when a reference form has zero signature at the ordering."""

    def __init__(self, message: str, ordering: int | None = None):
        self.ordering = ordering
        super().__init__(message)

class MissingReference(InvalidInputError):
    """Raised when a split ordering needs a reference and none was supplied."""

    def __init__(self, message: str, ordering: int | None = None):
        self.ordering = ordering
        super().__init__(message)

class PartialPolarization(InvalidInputError):
    """Raised when a polarization is not defined on every ordering."""

    ...

class DomainMismatch(InvalidInputError):
    """Raised when a sign function does not cover the polarization's domain."""

    ...

class InvalidLabel(InvalidInputError):
    """Raised when a spectrum label is malformed (p must be 0 or an odd prime)."""

    ...

class UnknownName(InvalidInputError):
    """Raised when a workspace does not define the requested name."""

    ...
