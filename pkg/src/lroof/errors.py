"""Exception types shared by all modules.

The CLI maps these onto exit codes: anything that is the caller's fault
(bad dimensions, malformed values, inputs outside the admissible set) exits
with 2, while failures of the computation itself exit with 1.
"""


class LroofError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(LroofError):
    """A dimension argument is outside the supported range."""


class InvalidInputError(LroofError):
    """An input value violates a precondition (non-hermitian, outside cone, ...)."""


class InvalidShapeError(InvalidInputError):
    """Array shapes do not match the declared dimensions."""


class RankTooHighError(InvalidInputError):
    """The input matrix has rank above the supported bound (2)."""


class HypothesisViolatedError(LroofError):
    """The pencil does not satisfy the spectral hypothesis of a cone-positive map.

    Raised when generalized eigenvalues come out non-real beyond tolerance or a
    required semidefiniteness certificate fails.
    """


class NumericalFailureError(LroofError):
    """An iteration failed to converge or an internal consistency check broke."""
