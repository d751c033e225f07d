"""Exception and warning types raised across the package."""


class DeformaError(Exception):
    """Base class for every error raised by deforma."""


class DomainError(DeformaError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. the gamma function at a nonpositive integer)."""


class RangeError(DomainError):
    """Argument is valid mathematically but outside the supported numeric range."""


class ConvergenceError(DeformaError, ArithmeticError):
    """A series or iteration failed to converge within its term cap."""


class TruncationError(DeformaError):
    """A truncated basis is too small for the requested accuracy."""


class ParityError(DomainError):
    """A function does not have the parity the caller declared."""


class AmplitudeZeroError(DomainError):
    """An amplitude vanished where a quantum potential divides by it."""


class BasisExpansionError(DeformaError, TypeError):
    """An input was not supplied in the required series representation."""


class GridTooCoarseError(DeformaError):
    """The grid does not resolve the computed eigenfunction."""


class ExpressionError(DeformaError, ValueError):
    """Syntax error in a user expression.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class UnknownIdentifierError(ExpressionError):
    pass


class SingularWeightWarning(UserWarning):
    """Quadrature step too coarse for a weakly singular kernel."""


class DecayWarning(UserWarning):
    """Function has not decayed at the quadrature cutoff."""
