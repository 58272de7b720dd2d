"""Exception types raised across the package."""


class NonHermitianError(ValueError):
    """Input to a Hermitian routine fails the symmetry tolerance."""


class NoConvergenceError(ArithmeticError):
    """An iterative eigensolver reached its sweep cap."""


class InvalidStateError(ValueError):
    """A matrix or vector violates a quantum-state invariant.

    ``invariant`` names the violated property (e.g. ``"hermitian"``,
    ``"unit_trace"``, ``"psd"``, ``"shape"``, ``"unit_norm"``).
    """

    def __init__(self, message, invariant):
        super().__init__(message)
        self.invariant = invariant


class NormViolation(InvalidStateError):
    def __init__(self, message):
        super().__init__(message, "unit_norm")


class ShapeMismatch(ValueError):
    pass


class BadDimension(ValueError):
    pass


class InvalidParams(ValueError):
    pass


class BadRank(ValueError):
    pass


class NumericalFailure(ArithmeticError):
    pass
