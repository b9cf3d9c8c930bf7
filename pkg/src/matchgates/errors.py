"""Exception hierarchy shared by every module of the package."""


class MatchgateError(Exception):
    """Base class for all errors raised by :mod:`matchgates`."""


class DimensionError(MatchgateError, ValueError):
    """Operands act on different numbers of qubits."""


class DomainError(MatchgateError, ValueError):
    """An argument lies outside the domain of the operation (bad index, n = 0, ...)."""


class ValidationError(MatchgateError, ValueError):
    """A structural contract was violated (non-unitary block, bad line pair, ...)."""


class NonGaussianGate(ValidationError):
    """Conjugating the generators by a gate leaves their linear span.

    Attributes:
        residual: the largest normalized Frobenius residual that was observed.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DegreeTooHigh(MatchgateError):
    """The monomial needed for an observable is longer than the caller allows."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"observable needs a degree-{degree} monomial (cap is {cap})")
        self.degree = degree
        self.cap = cap


class ToleranceError(MatchgateError, ArithmeticError):
    """A numerical self-check exceeded its tolerance."""


class ResourceError(MatchgateError):
    """A dense computation was refused because the qubit count exceeds its cap."""
