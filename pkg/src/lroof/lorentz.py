"""Jordan-algebra structure of R^m attached to the second-order cone.

A vector x = (x0, ..., x_{m-1}) has eigenvalues x0 +/- ||(x1..x_{m-1})||,
trace 2*x0 and determinant x0^2 - sum(x_k^2) = x^T diag(1,-1,...,-1) x.
The cone is the set of vectors with nonnegative eigenvalues.  For m = 4 the
isomorphism onto hermitian 2x2 matrices maps the cone onto the positive
semidefinite matrices, matching eigenvalues.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimensionError, InvalidInputError
from .herm import HermitianMatrix

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LorentzVector:
    """Element of R^m queried through its Jordan structure."""

    m: int
    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.m:
            raise InvalidDimensionError(f"expected {self.m} components, got shape {x.shape}")
        if self.m < 2:
            raise InvalidDimensionError("cone vectors need dimension >= 2")
        if not np.all(np.isfinite(x)):
            raise InvalidInputError("non-finite entries")
        x = x.copy()
        x.flags.writeable = False
        object.__setattr__(self, "x", x)


def vector(x):
    """Build a LorentzVector from array-like components."""
    x = np.asarray(x, dtype=float)
    return LorentzVector(m=x.shape[0], x=x)


@dataclass(frozen=True)
class JordanSpectrum:
    lambda_plus: float
    lambda_minus: float


class Region(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def jordan_eigenvalues(x: LorentzVector) -> JordanSpectrum:
    """Eigenvalue pair x0 +/- norm of the radial part."""
    radial = float(np.linalg.norm(x.x[1:]))
    return JordanSpectrum(x.x[0] + radial, x.x[0] - radial)


def jordan_trace(x: LorentzVector) -> float:
    return 2.0 * float(x.x[0])


def jordan_det(x: LorentzVector) -> float:
    """Quadratic form x^T J x with J = diag(1, -1, ..., -1)."""
    return float(x.x[0] ** 2 - np.dot(x.x[1:], x.x[1:]))


def signature_matrix(m: int) -> np.ndarray:
    """diag(1, -1, ..., -1) of size m."""
    if m < 2:
        raise InvalidDimensionError("signature matrix needs m >= 2")
    j = -np.eye(m)
    j[0, 0] = 1.0
    return j


def cone_membership(x: LorentzVector, tol: float = DEFAULT_TOL) -> Region:
    """Interior / Boundary / Outside classification, scale-robust.

    The boundary band is tol * max(1, ||x||), so unnormalized inputs classify
    consistently; the zero vector counts as Boundary.
    """
    if tol < 0:
        raise InvalidInputError("tol must be >= 0")
    spec = jordan_eigenvalues(x)
    scale = max(1.0, float(np.linalg.norm(x.x)))
    if spec.lambda_minus > tol * scale:
        return Region.INTERIOR
    if abs(spec.lambda_minus) <= tol * scale and spec.lambda_plus >= 0.0:
        return Region.BOUNDARY
    return Region.OUTSIDE


def iso_to_hermitian(x: LorentzVector) -> HermitianMatrix:
    """R^4 -> H(2): [[x0+x1, x2+i*x3], [x2-i*x3, x0-x1]]."""
    if x.m != 4:
        raise InvalidDimensionError("isomorphism needs m = 4")
    x0, x1, x2, x3 = x.x
    a = np.array([[x0 + x1, x2 + 1j * x3], [x2 - 1j * x3, x0 - x1]])
    return HermitianMatrix.from_entries(a)


def iso_from_hermitian(a: HermitianMatrix) -> LorentzVector:
    """Inverse of the R^4 -> H(2) isomorphism."""
    if a.d != 2:
        raise InvalidDimensionError("inverse isomorphism needs a 2x2 matrix")
    e = a.entries
    return vector(
        [
            (e[0, 0].real + e[1, 1].real) / 2.0,
            (e[0, 0].real - e[1, 1].real) / 2.0,
            e[0, 1].real,
            e[0, 1].imag,
        ]
    )


def sample_boundary(m: int, seed: int) -> LorentzVector:
    """Vector on the cone boundary: unit radial direction drawn uniformly, x0 = 1."""
    if m < 2:
        raise InvalidDimensionError("cone vectors need dimension >= 2")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(m - 1)
    nu = np.linalg.norm(u)
    while nu == 0.0:
        u = rng.standard_normal(m - 1)
        nu = np.linalg.norm(u)
    return vector(np.concatenate(([1.0], u / nu)))
