"""Exception types shared across the package."""


class HorochainError(ValueError):
    """Base class for all domain errors raised by this package."""


class DegenerateTerm(HorochainError):
    """A continued-fraction term has a vanishing partial numerator."""


class DivergentConvergent(HorochainError):
    """A convergent denominator vanished; the convergent is the point at infinity."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"convergent {index} has Q_{index} = 0")


class EvaluationZeroDivision(HorochainError, ZeroDivisionError):
    """An intermediate denominator vanished during bottom-up evaluation."""


class TableExhausted(HorochainError):
    """More coefficients were requested than a stored table holds."""


class InvalidCycleMatrix(HorochainError):
    """A 2x2 matrix does not have the shape of a cycle matrix."""


class ImaginaryCycle(HorochainError):
    """The cycle has negative squared radius."""


class DegenerateHorocycle(HorochainError):
    """The requested horocycle degenerates to a line or to a point."""


class PoleHit(HorochainError):
    """A Moebius map was evaluated at (or numerically at) its pole."""


class InvalidVersorMatrix(HorochainError):
    """A matrix of Clifford numbers fails the shape or Ahlfors conditions."""


class DegenerateView(HorochainError):
    """A section plane cannot be constructed from coincident touch points."""


class ParseError(HorochainError):
    """Malformed text input."""
