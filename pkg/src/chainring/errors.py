"""Exception hierarchy shared by every chainring module."""


class ChainringError(Exception):
    """Base class for all library errors."""


class NotPrime(ChainringError):
    pass


class ReducibleModulus(ChainringError):
    pass


class DegreeMismatch(ChainringError):
    pass


class UnsupportedFieldSize(ChainringError):
    """Field too large for the table-driven arithmetic backend."""


class DivisionByZero(ChainringError):
    pass


class ContextMismatch(ChainringError):
    """Operands belong to different field/ring contexts."""


class BothZero(ChainringError):
    pass


class ConstantPolynomial(ChainringError):
    pass


class ZeroPolynomial(ChainringError):
    pass


class FactorDegreeCapExceeded(ChainringError):
    """Trial-division factorization refuses inputs beyond desk scale."""


class NonUnitLeadingCoefficient(ChainringError):
    pass


class ZeroResidue(ChainringError):
    pass


class BadLevel(ChainringError):
    pass


class NotSpecialCase(ChainringError):
    """Operation requires the quotient modulus to be a prime power f(x)**(p**s)."""


class BadIndex(ChainringError):
    pass


class TrivialIdeal(ChainringError):
    pass


class ConstraintViolation(ChainringError):
    pass


class AmbiguousBranch(ChainringError):
    """Zero or several closed-form table rows matched; carries the candidates.

    ``candidates`` is a tuple of ``(branch_id, value)`` pairs, empty when no
    row matched.
    """

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class CapExceeded(ChainringError):
    """Ring too large to enumerate; carries the required cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class ZeroLambda(ChainringError):
    pass


class PolyParseError(ChainringError):
    """Syntax error in a polynomial literal; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownSymbol(PolyParseError):
    pass


class ExponentOverflow(PolyParseError):
    pass


class InternalInvariantError(ChainringError):
    """A library self-check failed; maps to CLI exit code 5."""
