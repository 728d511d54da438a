"""Exception hierarchy for the supertime package.

Every failure mode of the algebra and geometry layers maps to a dedicated
exception type so callers (and the CLI) can tell user errors, singular
inputs, and genuine bugs apart.
"""

from __future__ import annotations


class SupertimeError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZeroExpr(SupertimeError):
    """Division by an expression whose canonical form is zero."""


class DerivativeOrderExceeded(SupertimeError):
    """A time derivative would create a third-order derivative symbol."""


class CyclicBinding(SupertimeError):
    """A substitution maps a symbol to an expression that depends on it."""


class ParseError(SupertimeError):
    """Input text does not conform to the expression grammar.

    Carries the offset of the offending token and the set of token kinds
    that would have been accepted at that point.
    """

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class UnknownSymbol(ParseError):
    """An identifier is not present in the symbol registry."""


class NoBody(SupertimeError):
    """A supernumber with zero body has no inverse."""


class GradingViolation(SupertimeError):
    """A supermatrix entry has the wrong parity for its slot."""


class SingularBlockA(SupertimeError):
    """The even 1x1 block of a supermatrix has zero body."""


class SingularBlockB(SupertimeError):
    """The even 2x2 block of a supermatrix has a determinant with zero body."""


class ConstraintViolated(SupertimeError):
    """Model parameters violate a defining constraint.

    ``equation`` identifies which constraint failed, ``residual`` is its
    (nonzero) canonical residual.
    """

    def __init__(self, equation: str, residual=None):
        self.equation = equation
        self.residual = residual
        msg = f"constraint violated: {equation}"
        if residual is not None:
            msg += f" (residual {residual})"
        super().__init__(msg)


class EpsilonZero(SupertimeError):
    """A regulated quantum construction was asked for at eps = 0."""


class UnboundSymbol(SupertimeError):
    """A numeric evaluation met a symbol absent from the binding."""


class SingularNumeric(SupertimeError):
    """The numeric pipeline hit a zero body where an inverse was needed."""


class Inconclusive(SupertimeError):
    """The numeric oracle agreed with neither side of a discrepancy."""
