"""Real symmetric pencils P - lambda*J with J of signature (+ - ... -).

When some shift makes P - lambda*J positive semidefinite (true for every
pencil coming from a cone-positive map), all generalized eigenvalues are
real and P - lambda*J is PSD exactly for lambda between the second largest
and the largest eigenvalue.  Eigenvalues are those of J^{-1} P, computed by
the QR kernel; eigenvectors come from null spaces of P - lambda*J.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    HypothesisViolatedError,
    InvalidDimensionError,
    InvalidInputError,
    NumericalFailureError,
)

DEFAULT_TOL = 1e-9
REALNESS_TOL = 1e-8

_SYM_TOL = 1e-12


def _check_symmetric(s, name):
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidInputError(f"{name} must be square")
    if not np.all(np.isfinite(s)):
        raise InvalidInputError(f"{name} has non-finite entries")
    dev = np.linalg.norm(s - s.T)
    if dev > _SYM_TOL * max(1.0, np.linalg.norm(s)):
        raise InvalidInputError(f"{name} is not symmetric (deviation {dev:.3e})")
    return (s + s.T) / 2.0


def _eigh_sym(s):
    try:
        w, v = _kernels.eigh_jacobi(s.astype(complex))
    except RuntimeError as exc:
        raise NumericalFailureError(str(exc)) from exc
    return w, v.real


@dataclass(frozen=True)
class SymmetricPencil:
    m: int
    P: np.ndarray = field(repr=False)
    J: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = _check_symmetric(self.P, "P")
        j = _check_symmetric(self.J, "J")
        if p.shape != (self.m, self.m) or j.shape != (self.m, self.m):
            raise InvalidInputError("P, J must both be m x m")
        np_, nm_, nz_ = signature(j)
        if nz_ != 0 or np_ != 1 or nm_ != self.m - 1:
            raise InvalidInputError(
                f"J must be regular with signature (+,-,...,-), got ({np_},{nm_},{nz_})"
            )
        p.flags.writeable = False
        j.flags.writeable = False
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "J", j)

    @classmethod
    def from_forms(cls, p, j):
        p = np.asarray(p, dtype=float)
        return cls(m=p.shape[0], P=p, J=j)


@dataclass(frozen=True)
class PencilSpectrum:
    """Eigenvalues descending with matching real eigenvectors (columns).

    ``max_imag_residual`` records the largest imaginary part seen before it
    was checked against the realness tolerance.  Vectors belonging to a
    repeated eigenvalue are mutually orthogonal.
    """

    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    max_imag_residual: float = 0.0


def signature(s, tol: float = DEFAULT_TOL):
    """(n_plus, n_minus, n_zero) eigenvalue sign counts of a real symmetric matrix."""
    s = _check_symmetric(s, "S")
    w, _ = _eigh_sym(s)
    scale = max(1.0, float(np.linalg.norm(s)))
    n_plus = int(np.count_nonzero(w > tol * scale))
    n_minus = int(np.count_nonzero(w < -tol * scale))
    return n_plus, n_minus, s.shape[0] - n_plus - n_minus


def _inverse_times(j, p):
    # J^{-1} P; diagonal sign matrices invert by themselves, anything else
    # goes through the symmetric eigendecomposition of J.
    m = j.shape[0]
    diag = np.diag(np.diag(j))
    if np.array_equal(j, diag) and np.all(np.abs(np.abs(np.diag(j)) - 1.0) < 1e-15):
        return np.diag(j)[:, None] * p
    w, v = _eigh_sym(j)
    if np.min(np.abs(w)) <= 1e-12 * max(1.0, np.max(np.abs(w))):
        raise InvalidInputError("J is numerically singular")
    return v @ ((v.T @ p) / w[:, None])


def generalized_eigenvalues(pencil: SymmetricPencil, realness_tol: float = REALNESS_TOL) -> PencilSpectrum:
    """Spectrum of J^{-1} P, descending, with eigenvectors from null spaces.

    Raises HypothesisViolatedError when eigenvalues have imaginary parts above
    realness_tol * max(1, |lambda|): the pencil cannot come from a
    cone-positive map.
    """
    if pencil.m < 3:
        raise InvalidDimensionError("pencil eigenstructure needs m >= 3")
    m = pencil.m
    try:
        lam = _kernels.real_eigenvalues(_inverse_times(pencil.J, pencil.P))
    except RuntimeError as exc:
        raise NumericalFailureError(str(exc)) from exc
    max_imag = float(np.max(np.abs(lam.imag))) if m else 0.0
    # A multiple eigenvalue with a nontrivial Jordan structure (these pencils
    # are only semidefinite, so defectivity does occur) splits under rounding
    # into a sqrt(eps)-sized cluster, possibly complex.  The cluster mean is
    # well conditioned, so collapse such clusters before judging realness;
    # genuine violations produce imaginary parts orders of magnitude larger.
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    scale = max(1.0, float(np.max(np.abs(lam))))
    ctol = 4e-7 * scale
    i = 0
    while i < m:
        jj = i
        while jj + 1 < m and abs(lam[jj + 1] - lam[jj]) <= ctol:
            jj += 1
        if jj > i:
            lam[i : jj + 1] = np.mean(lam[i : jj + 1])
        i = jj + 1
    bad = np.abs(lam.imag) > realness_tol * np.maximum(1.0, np.abs(lam))
    if np.any(bad):
        raise HypothesisViolatedError(
            f"non-real generalized eigenvalues (max imaginary part {max_imag:.3e})"
        )
    vals = np.ascontiguousarray(np.sort(lam.real, kind="stable")[::-1])
    scale = max(1.0, float(np.max(np.abs(vals))))
    group_tol = 1e-7 * scale
    vectors = np.zeros((m, m))
    i = 0
    while i < m:
        jj = i
        while jj + 1 < m and vals[i] - vals[jj + 1] <= group_tol:
            jj += 1
        size = jj - i + 1
        center = float(np.mean(vals[i : jj + 1]))
        w, v = _eigh_sym(pencil.P - center * pencil.J)
        order = np.argsort(np.abs(w), kind="stable")
        vectors[:, i : jj + 1] = v[:, order[:size]]
        i = jj + 1
    vals.flags.writeable = False
    vectors.flags.writeable = False
    return PencilSpectrum(eigenvalues=vals, eigenvectors=vectors, max_imag_residual=max_imag)


@dataclass(frozen=True)
class PsdInterval:
    lambda2: float
    lambda1: float
    certified: bool


def psd_interval(pencil: SymmetricPencil, tol: float = DEFAULT_TOL) -> PsdInterval:
    """(lambda2, lambda1) plus a PSD certificate at the interval midpoint.

    ``certified`` False means P - lambda*J failed the semidefiniteness check
    inside the claimed interval, i.e. the PSD hypothesis did not hold.
    """
    spec = generalized_eigenvalues(pencil)
    l1 = float(spec.eigenvalues[0])
    l2 = float(spec.eigenvalues[1])
    mid = 0.5 * (l1 + l2)
    s = pencil.P - mid * pencil.J
    w, _ = _eigh_sym(s)
    scale = max(1.0, float(np.linalg.norm(s)))
    return PsdInterval(lambda2=l2, lambda1=l1, certified=bool(w[-1] >= -tol * scale))


def eigenvector_for(pencil: SymmetricPencil, lam: float, tol: float = DEFAULT_TOL):
    """Orthonormal basis of the null space of P - lambda*J.

    ``tol`` is relative to ||P|| + |lambda| ||J||.  Raises
    NumericalFailureError when the null space is empty at the claimed
    eigenvalue.
    """
    s = pencil.P - lam * pencil.J
    w, v = _eigh_sym(s)
    scale = max(
        1.0, float(np.linalg.norm(pencil.P)) + abs(lam) * float(np.linalg.norm(pencil.J))
    )
    keep = np.abs(w) <= tol * scale
    if not np.any(keep):
        raise NumericalFailureError(f"no null space at lambda={lam!r}")
    return [v[:, i].copy() for i in np.flatnonzero(keep)]
