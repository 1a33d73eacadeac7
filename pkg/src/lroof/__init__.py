"""Concurrence and I-fidelity of cone-positive maps via pencil eigenvalues.

Closed-form convex and concave roofs for Lorentz-positive maps, positive
maps on hermitian 2x2 inputs, rank-2 inputs to arbitrary positive maps and
rank-2 bipartite matrices, with optimal two-point decompositions, a
Monte-Carlo falsification oracle and graph-Laplacian tabulations.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    HypothesisViolatedError,
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
    LroofError,
    NumericalFailureError,
    RankTooHighError,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "LroofError",
    "InvalidDimensionError",
    "InvalidInputError",
    "InvalidShapeError",
    "RankTooHighError",
    "HypothesisViolatedError",
    "NumericalFailureError",
    "__version__",
]
