"""Complex hermitian matrix arithmetic.

Second symmetric function, partial traces over a bipartite block structure,
eigen/rank/PSD queries through the Jacobi kernel, the universal inverter,
and the 4-dimensional subspace of matrices whose range lies in a fixed
2-dimensional subspace (the stage on which all rank-2 roof computations run).

Blocks of a d1 (x) d2 bipartite matrix are row-major with the second
subsystem contiguous: block (k, l) occupies rows/cols [k*d2, (k+1)*d2).
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
    NumericalFailureError,
    RankTooHighError,
)

DEFAULT_TOL = 1e-9
MAX_DIM = 64

_HERM_TOL = 1e-12


@dataclass(frozen=True)
class HermitianMatrix:
    """d x d complex hermitian matrix (symmetrized and checked on build)."""

    d: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape != (self.d, self.d):
            raise InvalidShapeError(f"expected {self.d}x{self.d}, got {a.shape}")
        if self.d < 1 or self.d > MAX_DIM:
            raise InvalidDimensionError(f"matrix size must be in [1, {MAX_DIM}]")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise InvalidInputError("non-finite entries")
        dev = np.linalg.norm(a - a.conj().T)
        if dev > _HERM_TOL * max(1.0, np.linalg.norm(a)):
            raise InvalidInputError(f"matrix is not hermitian (deviation {dev:.3e})")
        a = (a + a.conj().T) / 2.0
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_entries(cls, a):
        a = np.asarray(a, dtype=complex)
        return cls(d=a.shape[0], entries=a)


@dataclass(frozen=True)
class BipartiteShape:
    d1: int
    d2: int

    def check(self, d: int):
        if self.d1 * self.d2 != d:
            raise InvalidShapeError(f"shape {self.d1}x{self.d2} does not factor size {d}")


@dataclass(frozen=True)
class SubspaceBasis:
    """Two orthonormal vectors spanning P plus an orthonormal basis of U_P.

    ``vectors`` is d x 2; ``up_basis`` stacks the four hermitian matrices
    {uu*, vv*, (uv*+vu*)/sqrt2, i(uv*-vu*)/sqrt2} whose span is the set of
    hermitian matrices with range inside P.
    """

    d: int
    vectors: np.ndarray = field(repr=False)
    up_basis: np.ndarray = field(repr=False)


def sigma2(a: HermitianMatrix) -> float:
    """Second symmetric function ((tr A)^2 - <A, A>)/2 = sum of eigenvalue pairs."""
    e = a.entries
    tr = np.trace(e).real
    return float((tr * tr - np.vdot(e, e).real) / 2.0)


def partial_trace_1(m: HermitianMatrix, shape: BipartiteShape) -> HermitianMatrix:
    """Sum of the diagonal blocks; the d2 x d2 reduction over the first subsystem."""
    shape.check(m.d)
    blocks = m.entries.reshape(shape.d1, shape.d2, shape.d1, shape.d2)
    return HermitianMatrix.from_entries(np.einsum("kikj->ij", blocks))


def partial_trace_2(m: HermitianMatrix, shape: BipartiteShape) -> HermitianMatrix:
    """d1 x d1 matrix of block traces; the reduction over the second subsystem."""
    shape.check(m.d)
    blocks = m.entries.reshape(shape.d1, shape.d2, shape.d1, shape.d2)
    return HermitianMatrix.from_entries(np.einsum("kili->kl", blocks))


def eigen_hermitian(a: HermitianMatrix):
    """(eigenvalues descending, orthonormal eigenvector columns) via cyclic Jacobi."""
    try:
        w, v = _kernels.eigh_jacobi(a.entries)
    except RuntimeError as exc:
        raise NumericalFailureError(str(exc)) from exc
    return w, v


def rank_within(a: HermitianMatrix, tol: float = DEFAULT_TOL) -> int:
    w, _ = eigen_hermitian(a)
    scale = max(1.0, float(np.linalg.norm(a.entries)))
    return int(np.count_nonzero(np.abs(w) > tol * scale))


def is_psd(a: HermitianMatrix, tol: float = DEFAULT_TOL) -> bool:
    w, _ = eigen_hermitian(a)
    scale = max(1.0, float(np.linalg.norm(a.entries)))
    return bool(w[-1] >= -tol * scale)


def orthonormal_basis(d: int):
    """Deterministic Frobenius-orthonormal basis of the hermitian d x d matrices.

    Order: diagonal units E_kk, then (E_kl + E_lk)/sqrt2 for k < l in
    lexicographic order, then i(E_kl - E_lk)/sqrt2 likewise.
    """
    if d < 1:
        raise InvalidDimensionError("basis needs d >= 1")
    s = 1.0 / np.sqrt(2.0)
    out = []
    for k in range(d):
        b = np.zeros((d, d), dtype=complex)
        b[k, k] = 1.0
        out.append(b)
    for k in range(d):
        for l in range(k + 1, d):
            b = np.zeros((d, d), dtype=complex)
            b[k, l] = s
            b[l, k] = s
            out.append(b)
    for k in range(d):
        for l in range(k + 1, d):
            b = np.zeros((d, d), dtype=complex)
            b[k, l] = 1j * s
            b[l, k] = -1j * s
            out.append(b)
    return out


def universal_inverter(a: HermitianMatrix) -> HermitianMatrix:
    """tr(A) I - A."""
    e = a.entries
    return HermitianMatrix.from_entries(np.trace(e).real * np.eye(a.d) - e)


def range_subspace(x: HermitianMatrix, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """2-dimensional subspace containing range(X), with the induced U_P basis.

    For rank-1 (or zero) input the missing directions are padded
    deterministically: the lowest-index canonical vector not parallel to the
    range, Gram-Schmidt orthogonalized.
    """
    w, v = eigen_hermitian(x)
    scale = max(1.0, float(np.linalg.norm(x.entries)))
    idx = np.argsort(-np.abs(w), kind="stable")
    keep = [i for i in idx if abs(w[i]) > tol * scale]
    if len(keep) > 2:
        raise RankTooHighError(f"rank {len(keep)} exceeds 2")
    cols = [v[:, i] for i in keep]
    ci = 0
    while len(cols) < 2:
        if ci >= x.d:
            raise NumericalFailureError("could not pad range to dimension 2")
        e = np.zeros(x.d, dtype=complex)
        e[ci] = 1.0
        ci += 1
        for c in cols:
            e = e - c * np.vdot(c, e)
        ne = np.linalg.norm(e)
        if ne > 0.5:  # canonical vector essentially parallel to the range otherwise
            cols.append(e / ne)
    u, vv = cols[0], cols[1]
    s = 1.0 / np.sqrt(2.0)
    up = np.stack(
        [
            np.outer(u, u.conj()),
            np.outer(vv, vv.conj()),
            s * (np.outer(u, vv.conj()) + np.outer(vv, u.conj())),
            1j * s * (np.outer(u, vv.conj()) - np.outer(vv, u.conj())),
        ]
    )
    return SubspaceBasis(d=x.d, vectors=np.column_stack([u, vv]), up_basis=up)


def restrict_form(q, basis: SubspaceBasis) -> np.ndarray:
    """4x4 matrix of the symmetric bilinear polarization of q on the U_P basis.

    ``q`` is a callable quadratic form on hermitian d x d arrays.
    """
    mats = basis.up_basis
    out = np.zeros((4, 4))
    for i in range(4):
        out[i, i] = q(mats[i])
        for jj in range(i + 1, 4):
            out[i, jj] = out[jj, i] = (q(mats[i] + mats[jj]) - q(mats[i] - mats[jj])) / 4.0
    return out


def subspace_coordinates(x: HermitianMatrix, basis: SubspaceBasis) -> np.ndarray:
    """Real coefficients of x in the U_P basis (valid when range(x) lies in P)."""
    return np.einsum("kij,ij->k", basis.up_basis.conj(), x.entries).real


def from_subspace_coordinates(c, basis: SubspaceBasis) -> HermitianMatrix:
    return HermitianMatrix.from_entries(np.tensordot(np.asarray(c, dtype=float), basis.up_basis, 1))
