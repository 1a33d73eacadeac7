"""Cone-positive linear maps and their representations.

Lorentz maps are plain n x m matrices; positive maps between hermitian
spaces are stored as d2^2 x d1^2 real matrices in the deterministic
orthonormal bases of herm.orthonormal_basis; completely positive maps carry
their Kraus operators.  The lifting turns any positive map into a map into
R^{d2^2+1} whose cone determinant reproduces the second symmetric function
of the image, which is what lets the pencil formulas apply to hermitian
inputs.
"""

from dataclasses import dataclass, field

import numpy as np

from . import herm, lorentz, pencil
from .errors import (
    HypothesisViolatedError,
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
)
from .herm import BipartiteShape, HermitianMatrix
from .lorentz import LorentzVector, Region

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LorentzMap:
    """Linear map R^m -> R^n acting on the second-order cones."""

    n: int
    m: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.shape != (self.n, self.m):
            raise InvalidShapeError(f"expected {self.n}x{self.m}, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("non-finite entries")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)

    @classmethod
    def from_matrix(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(n=a.shape[0], m=a.shape[1], matrix=a)


@dataclass(frozen=True)
class PositiveMapH:
    """Linear map H(d1) -> H(d2) in orthonormal-basis coordinates."""

    d1: int
    d2: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.shape != (self.d2 * self.d2, self.d1 * self.d1):
            raise InvalidShapeError(f"expected {self.d2 ** 2}x{self.d1 ** 2}, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("non-finite entries")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)


def identity_map(d: int) -> PositiveMapH:
    return PositiveMapH(d1=d, d2=d, matrix=np.eye(d * d))


@dataclass(frozen=True)
class KrausMap:
    """Completely positive map X -> sum_k A_k X A_k* with d3 operators d2 x d1."""

    d1: int
    d2: int
    d3: int
    ops: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.ops, dtype=complex)
        if a.ndim != 3 or a.shape != (self.d3, self.d2, self.d1):
            raise InvalidShapeError(f"expected {self.d3} ops of shape {self.d2}x{self.d1}")
        if self.d3 < 1:
            raise InvalidInputError("need at least one Kraus operator")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise InvalidInputError("non-finite entries")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "ops", a)

    @classmethod
    def from_ops(cls, ops):
        a = np.stack([np.asarray(op, dtype=complex) for op in ops])
        return cls(d1=a.shape[2], d2=a.shape[1], d3=a.shape[0], ops=a)


def apply_lorentz(u: LorentzMap, x: LorentzVector) -> LorentzVector:
    if x.m != u.m:
        raise InvalidShapeError(f"map expects dimension {u.m}, vector has {x.m}")
    return lorentz.vector(u.matrix @ x.x)


def hermitian_coordinates(x: HermitianMatrix) -> np.ndarray:
    """Coefficients of x in the deterministic orthonormal basis of H(d)."""
    basis = herm.orthonormal_basis(x.d)
    return np.array([np.vdot(b, x.entries).real for b in basis])


def hermitian_from_coordinates(c, d: int) -> HermitianMatrix:
    basis = herm.orthonormal_basis(d)
    out = np.zeros((d, d), dtype=complex)
    for ck, b in zip(np.asarray(c, dtype=float), basis):
        out += ck * b
    return HermitianMatrix.from_entries(out)


def apply_positive(phi: PositiveMapH, x: HermitianMatrix) -> HermitianMatrix:
    if x.d != phi.d1:
        raise InvalidShapeError(f"map expects size {phi.d1}, matrix has {x.d}")
    return hermitian_from_coordinates(phi.matrix @ hermitian_coordinates(x), phi.d2)


def from_kraus(k: KrausMap) -> PositiveMapH:
    """Basis-coordinate matrix of X -> sum_k A_k X A_k*."""
    bin_ = np.stack(herm.orthonormal_basis(k.d1))
    bout = np.stack(herm.orthonormal_basis(k.d2))
    images = np.einsum("kab,jbc,kdc->jad", k.ops, bin_, k.ops.conj())
    mat = np.einsum("iad,jad->ij", bout.conj(), images).real
    return PositiveMapH(d1=k.d1, d2=k.d2, matrix=mat)


def kraus_swap(k: KrausMap) -> KrausMap:
    """Exchange rank and length: the d2 operators (A'_b)_{ga} = (A_g)_{ba}."""
    return KrausMap(d1=k.d1, d2=k.d3, d3=k.d2, ops=k.ops.transpose(1, 0, 2).copy())


def stack(k: KrausMap) -> np.ndarray:
    """Vertical concatenation A of the Kraus operators, a (d2*d3) x d1 matrix."""
    return k.ops.reshape(k.d3 * k.d2, k.d1).copy()


def bipartite_lift(k: KrausMap, x: HermitianMatrix):
    """(A X A*, shape) -- the d3 (x) d2 bipartite matrix whose partial traces
    recover the map and its rank/length swap."""
    if x.d != k.d1:
        raise InvalidShapeError(f"map expects size {k.d1}, matrix has {x.d}")
    a = stack(k)
    return (
        HermitianMatrix.from_entries(a @ x.entries @ a.conj().T),
        BipartiteShape(d1=k.d3, d2=k.d2),
    )


def lift_to_lorentz(phi: PositiveMapH) -> LorentzMap:
    """Map into R^{d2^2+1} with det(lift(X)) = sigma2(phi(X)).

    Input coordinates are orthonormal-basis coefficients on H(d1), so the
    relevant input cone is the coordinate image of the PSD matrices, not the
    second-order cone of R^{d1^2}; roof computations on lifted maps must go
    through the hermitian entry points.
    """
    traces = np.array([np.trace(b).real for b in herm.orthonormal_basis(phi.d2)])
    s = np.sqrt(2.0) / 2.0
    top = s * (traces @ phi.matrix)
    rest = s * phi.matrix
    return LorentzMap.from_matrix(np.vstack([top, rest]))


def lorentz_pencil(u: LorentzMap) -> pencil.SymmetricPencil:
    """The pencil (U^T J_n U, J_m) whose eigenvalues drive the roof formulas."""
    jn = lorentz.signature_matrix(u.n)
    return pencil.SymmetricPencil.from_forms(
        u.matrix.T @ jn @ u.matrix, lorentz.signature_matrix(u.m)
    )


@dataclass(frozen=True)
class PositivityResult:
    """Outcome of the Lorentz-positivity test.

    ``certificate`` is the shift lambda-hat with U^T J_n U >= lambda-hat J_m
    when positive; otherwise ``stage`` names the failed check and ``witness``
    (when found) is a boundary vector whose image leaves the cone.
    """

    positive: bool
    certificate: float | None = None
    witness: LorentzVector | None = None
    stage: str | None = None


def _witness_search(u: LorentzMap, tol: float):
    candidates = [np.eye(u.m)[0]]
    for k in range(1, u.m):
        e = np.zeros(u.m)
        e[0] = 1.0
        e[k] = 1.0
        candidates.append(e.copy())
        e[k] = -1.0
        candidates.append(e.copy())
    for seed in range(1000):
        candidates.append(lorentz.sample_boundary(u.m, seed).x)
    best = None
    best_lm = 0.0
    for c in candidates:
        y = lorentz.vector(u.matrix @ c)
        if lorentz.cone_membership(y, tol) is Region.OUTSIDE:
            lm = lorentz.jordan_eigenvalues(y).lambda_minus
            if lm < best_lm:
                best_lm = lm
                best = lorentz.vector(c)
    return best


def is_lorentz_positive(u: LorentzMap, tol: float = DEFAULT_TOL) -> PositivityResult:
    """Certificate-based positivity test.

    Positive iff (a) the pencil (U^T J_n U, J_m) has a real spectrum, (b) a
    nonnegative shift inside the PSD interval certifies U^T J_n U >= shift *
    J_m, and (c) U e0 lands in the cone.  Necessity follows from the
    S-procedure; sufficiency of certificate-plus-anchor holds whenever U does
    not collapse interior points to zero, which is the only degenerate case
    and is reported through the witness search like any other failure.
    """
    if u.n < 2 or u.m < 2:
        raise InvalidDimensionError("need n, m >= 2")
    if u.m == 2:
        # L_2 is the polyhedral cone spanned by (1, 1) and (1, -1): the image
        # of the two extreme rays decides positivity exactly.
        for ray in (np.array([1.0, 1.0]), np.array([1.0, -1.0])):
            y = lorentz.vector(u.matrix @ ray)
            if lorentz.cone_membership(y, tol) is Region.OUTSIDE:
                return PositivityResult(
                    positive=False, witness=lorentz.vector(ray), stage="extreme-ray image"
                )
        return PositivityResult(positive=True, certificate=None)
    pen = lorentz_pencil(u)
    try:
        spec = pencil.generalized_eigenvalues(pen)
    except HypothesisViolatedError:
        return PositivityResult(
            positive=False, witness=_witness_search(u, tol), stage="non-real pencil spectrum"
        )
    l1 = float(spec.eigenvalues[0])
    l2 = float(spec.eigenvalues[1])
    if l1 < 0.0:
        return PositivityResult(
            positive=False, witness=_witness_search(u, tol), stage="negative top eigenvalue"
        )
    lam_hat = min(max(l2, 0.0), l1)
    s = pen.P - lam_hat * pen.J
    w, _ = pencil._eigh_sym(s)
    if w[-1] < -tol * max(1.0, float(np.linalg.norm(s))):
        return PositivityResult(
            positive=False, witness=_witness_search(u, tol), stage="certificate not PSD"
        )
    anchor = lorentz.vector(u.matrix[:, 0])
    if lorentz.cone_membership(anchor, tol) is Region.OUTSIDE:
        return PositivityResult(
            positive=False, witness=lorentz.vector(np.eye(u.m)[0]), stage="center image outside cone"
        )
    return PositivityResult(positive=True, certificate=lam_hat)


def _sigma_max_bound(d: np.ndarray) -> float:
    # power iteration on D^T D; the construction margin absorbs the residual
    if d.size == 0:
        return 0.0
    g = d.T @ d
    v = np.ones(g.shape[0]) / np.sqrt(g.shape[0])
    for _ in range(200):
        nv = g @ v
        nn = np.linalg.norm(nv)
        if nn == 0.0:
            return 0.0
        v = nv / nn
    return float(np.sqrt(v @ g @ v)) * (1.0 + 1e-9)


def random_lorentz_positive(n: int, m: int, seed: int, margin_factor: float = 0.05) -> LorentzMap:
    """Random map that is Lorentz-positive by construction.

    Block form [[a, b^T], [c, D]] with a = ||b|| + ||c|| + sigma_max(D) +
    margin, so the image of any cone vector keeps a slope margin away from
    the boundary; margin = margin_factor * max(1, ||b|| + ||c|| + sigma_max).
    The result is rescaled to unit Frobenius norm (positivity and the
    relative margin are scale-invariant), keeping concurrence values O(1).
    """
    if n < 3 or m < 3:
        raise InvalidDimensionError("need n, m >= 3")
    rng = np.random.default_rng(seed)
    b = rng.standard_normal(m - 1)
    c = rng.standard_normal(n - 1)
    d = rng.standard_normal((n - 1, m - 1))
    base = float(np.linalg.norm(b) + np.linalg.norm(c) + _sigma_max_bound(d))
    a = base + margin_factor * max(1.0, base)
    out = np.zeros((n, m))
    out[0, 0] = a
    out[0, 1:] = b
    out[1:, 0] = c
    out[1:, 1:] = d
    return LorentzMap.from_matrix(out / np.linalg.norm(out))
