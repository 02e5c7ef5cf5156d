"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class DefectRangeError(DomainError):
    """A quantum-defect profile violates its orthonormalizability bound."""


class ConsistencyError(ValueError):
    """Two coupled parameter sets disagree (e.g. A != 2a in a mapping)."""


class AccuracyError(ArithmeticError):
    """A numerical kernel could not reach its accuracy target."""

    def __init__(self, message, attained=None):
        super().__init__(message)
        self.attained = attained


class SolverError(RuntimeError):
    """The finite-difference eigensolver failed."""
