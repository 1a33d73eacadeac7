"""Convex and concave roofs through pencil eigenvalues.

On a cone cut out by a quadratic form J of signature (+ - ... -), the largest
convex (resp. smallest concave) extension of 2*sqrt(P(.)) from the boundary
into the cone is 2*sqrt(P(x) - lambda*J(x)), with lambda the second largest
(resp. smallest) generalized eigenvalue of the pencil P - lambda*J.  The
entry points below instantiate this for Lorentz maps, positive maps on
hermitian 2x2 inputs, rank-2 inputs to arbitrary positive maps, and rank-2
bipartite matrices, and can return an optimal two-point decomposition
witnessing the value.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import herm, lorentz, maps, pencil
from .errors import (
    InvalidDimensionError,
    InvalidInputError,
    NumericalFailureError,
    RankTooHighError,
)
from .herm import BipartiteShape, HermitianMatrix
from .lorentz import LorentzVector, Region
from .maps import LorentzMap, PositiveMapH

DEFAULT_TOL = 1e-9

_RADICAND_SLACK = 1e-9
_ZERO_BAND = 1e-12
_HYPOTHESIS_TOL = 1e-7
_GROUP_TOL = 1e-7


class RoofKind(enum.Enum):
    CONCURRENCE = "concurrence"
    FIDELITY = "fidelity"


class DecompositionKind(enum.Enum):
    CONVEX = "convex"
    CONIC = "conic"


@dataclass(frozen=True)
class ConicDecomposition:
    """Weighted extremal points reconstructing an input and its roof value.

    ``parts`` is a tuple of (weight, point); points are LorentzVector,
    HermitianMatrix or plain arrays depending on the producing entry point.
    Convex decompositions have weights summing to one; conic ones add an
    extreme-ray contribution with a free positive weight.
    """

    parts: tuple
    kind: DecompositionKind


@dataclass(frozen=True)
class RoofResult:
    """value = 2*sqrt(P(x) - lambda_used*J(x)) in the producing operation's forms.

    ``spectrum`` is None exactly when a rank-1 input bypassed the pencil.
    """

    value: float
    lambda_used: float
    kind: RoofKind
    spectrum: pencil.PencilSpectrum | None = None
    decomposition: ConicDecomposition | None = None


def _select_eigvec(spec, lam, p, j, x, tol):
    """Eigenvector for the decomposition: J-nonpositive, not parallel to x,
    maximizing |v^T J x| (deterministic tie-break by basis order).

    Multiple eigenvalues can be defective (these pencils are only
    semidefinite), in which case the reported eigenvector block is padded
    with best-effort vectors; candidates are therefore filtered by their
    actual eigen-residual before anything else.
    """
    scale = max(1.0, float(np.max(np.abs(spec.eigenvalues))))
    cols = np.flatnonzero(np.abs(spec.eigenvalues - lam) <= _GROUP_TOL * scale)
    v = spec.eigenvectors[:, cols]
    s = p - lam * j
    res_tol = 1e-6 * max(1.0, float(np.linalg.norm(p)) + abs(lam) * float(np.linalg.norm(j)))
    genuine = [i for i in range(v.shape[1]) if np.linalg.norm(s @ v[:, i]) <= res_tol]
    if not genuine:
        raise NumericalFailureError("no usable eigenvector for the decomposition")
    v = v[:, genuine]
    if v.shape[1] > 1:
        # diagonalize the J-form on the eigenspace so candidates carry a
        # definite sign of v^T J v; a nonpositive one always exists here
        g = v.T @ j @ v
        _, gv = pencil._eigh_sym((g + g.T) / 2.0)
        v = v @ gv
    nx = np.linalg.norm(x)
    jtol = tol * max(1.0, float(np.linalg.norm(j)))
    best = None
    best_score = -1.0
    for i in range(v.shape[1]):
        w = v[:, i]
        if w @ j @ w > jtol:
            continue
        if abs(np.dot(w, x)) >= (1.0 - 1e-9) * np.linalg.norm(w) * nx:
            continue
        score = abs(w @ j @ x)
        if score > best_score + 1e-15:
            best_score = score
            best = w
    if best is None:
        raise NumericalFailureError("no usable eigenvector for the decomposition")
    return best


def optimal_decomposition(p, j, x, eigvec, tol: float = DEFAULT_TOL) -> ConicDecomposition:
    """Two-point decomposition of x induced by a pencil eigenvector.

    ``eigvec`` must satisfy (P - lambda*J) eigvec = 0 for the eigenvalue the
    roof used; the split itself only involves the cone form J.  Interior x
    with a J-negative eigenvector gives a convex pair on the boundary; a
    J-null eigenvector gives one boundary point plus an extreme-ray term.
    Boundary x returns the trivial single-part decomposition.
    """
    j = np.asarray(j, dtype=float)
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(eigvec, dtype=float)
    jnorm = max(1.0, float(np.linalg.norm(j)))
    nx = float(np.linalg.norm(x))
    c = float(x @ j @ x)
    if abs(c) <= tol * jnorm * nx * nx:
        return ConicDecomposition(parts=((1.0, x.copy()),), kind=DecompositionKind.CONVEX)
    if c < 0.0:
        raise InvalidInputError("x is outside the cone")
    nh = float(np.linalg.norm(xhat))
    if nh == 0.0 or abs(np.dot(xhat, x)) >= (1.0 - 1e-12) * nh * nx:
        raise NumericalFailureError("eigenvector is parallel to x")
    a = float(xhat @ j @ xhat)
    b = 2.0 * float(x @ j @ xhat)
    if a < -tol * jnorm * nh * nh:
        disc = b * b - 4.0 * a * c
        sq = np.sqrt(max(disc, 0.0))
        q = -0.5 * (b + np.copysign(sq, b)) if b != 0.0 else -0.5 * sq
        tp, tm = max(q / a, c / q), min(q / a, c / q)
        y = x + tp * xhat
        z = x + tm * xhat
        mu = -tm / (tp - tm)
        return ConicDecomposition(
            parts=((mu, y), (1.0 - mu, z)), kind=DecompositionKind.CONVEX
        )
    if a > tol * jnorm * nh * nh:
        raise NumericalFailureError("eigenvector has positive cone form")
    # J-null eigenvector: single boundary hit plus the eigvec extreme ray
    if b < 0.0:
        xhat = -xhat
        b = -b
    if b <= tol * jnorm * nh * nx:
        raise NumericalFailureError("line along the eigenvector never leaves the cone")
    tstar = -c / b
    y = x + tstar * xhat
    return ConicDecomposition(
        parts=((1.0, y), (-tstar * nh, xhat / nh)), kind=DecompositionKind.CONIC
    )


def _roof_engine(p, j, x, kind, want_decomposition, tol):
    """Shared value/decomposition computation on raw forms.

    Returns (value, lambda_used, spectrum, decomposition-with-array-points).
    """
    pen = pencil.SymmetricPencil.from_forms(p, j)
    spec = pencil.generalized_eigenvalues(pen)
    guard = pen.P - float(spec.eigenvalues[1]) * pen.J
    gw, _ = pencil._eigh_sym(guard)
    if gw[-1] < -_HYPOTHESIS_TOL * max(1.0, float(np.linalg.norm(guard))):
        raise NumericalFailureError(
            "P - lambda2*J is not positive semidefinite; the map was not cone-positive"
        )
    lam = float(spec.eigenvalues[1] if kind is RoofKind.CONCURRENCE else spec.eigenvalues[-1])
    px = float(x @ pen.P @ x)
    jx = float(x @ pen.J @ x)
    radicand = px - lam * jx
    # the natural magnitude of the two cancelling form evaluations; rounding
    # noise in the radicand is a small multiple of eps times this
    xx = float(np.dot(x, x))
    scale = max(
        1.0,
        float(np.linalg.norm(pen.P)) * xx,
        abs(lam) * float(np.linalg.norm(pen.J)) * xx,
    )
    if radicand < -_RADICAND_SLACK * scale:
        raise NumericalFailureError(
            f"negative radicand {radicand:.3e}: positivity hypothesis was false"
        )
    if abs(radicand) <= _ZERO_BAND * scale:
        # an exactly-zero roof would otherwise surface as sqrt(rounding noise)
        radicand = 0.0
    radicand = max(radicand, 0.0)
    value = 2.0 * float(np.sqrt(radicand))
    dec = None
    if want_decomposition:
        jscale = max(1.0, float(np.linalg.norm(pen.J)) * float(np.dot(x, x)))
        if abs(jx) <= tol * jscale:
            dec = ConicDecomposition(
                parts=((1.0, np.array(x, dtype=float)),), kind=DecompositionKind.CONVEX
            )
        else:
            xhat = _select_eigvec(spec, lam, pen.P, pen.J, x, tol)
            dec = optimal_decomposition(pen.P, pen.J, x, xhat, tol)
    return value, lam, spec, dec


def roof_lorentz(
    u: LorentzMap,
    x: LorentzVector,
    kind: RoofKind,
    want_decomposition: bool = False,
    tol: float = DEFAULT_TOL,
) -> RoofResult:
    """Concurrence / I-fidelity of a Lorentz-positive map at a cone vector.

    The caller vouches for the positivity of the map (use
    maps.is_lorentz_positive to verify); a violated pencil hypothesis still
    surfaces as an error.
    """
    if u.m < 3:
        raise InvalidDimensionError("roof computations need m >= 3")
    if x.m != u.m:
        raise InvalidInputError(f"map expects dimension {u.m}, vector has {x.m}")
    if lorentz.cone_membership(x, tol) is Region.OUTSIDE:
        raise InvalidInputError("input vector is outside the cone")
    pen = maps.lorentz_pencil(u)
    value, lam, spec, dec = _roof_engine(pen.P, pen.J, x.x, kind, want_decomposition, tol)
    if dec is not None:
        dec = ConicDecomposition(
            parts=tuple((w, lorentz.vector(pt)) for w, pt in dec.parts), kind=dec.kind
        )
    return RoofResult(value=value, lambda_used=lam, kind=kind, spectrum=spec, decomposition=dec)


def _component_coordinates(j):
    """Transform W with J(x) = (Wx)_0^2 - sum (Wx)_k^2, for component checks."""
    w, v = pencil._eigh_sym(np.asarray(j, dtype=float))
    # descending eigenvalues: the single positive one comes first
    return (np.sqrt(np.abs(w))[:, None] * v.T), w


def roof_general(
    p,
    j,
    x,
    kind: RoofKind,
    want_decomposition: bool = False,
    anchor=None,
    tol: float = DEFAULT_TOL,
) -> RoofResult:
    """Roof extension for a plain pencil of quadratic forms.

    {J >= 0} splits into two opposite cones; the computation applies to the
    component containing ``anchor`` (defaults to x itself when J(x) > 0,
    which is the only case where the component matters).
    """
    p = np.asarray(p, dtype=float)
    j = np.asarray(j, dtype=float)
    x = np.asarray(x, dtype=float)
    jx = float(x @ j @ x)
    jscale = max(1.0, float(np.linalg.norm(j)) * float(np.dot(x, x)))
    if jx < -tol * jscale:
        raise InvalidInputError("x is outside the cone {J >= 0}")
    if anchor is not None and jx > tol * jscale:
        w, _ = _component_coordinates(j)
        if (w @ x)[0] * (w @ np.asarray(anchor, dtype=float))[0] < 0.0:
            raise InvalidInputError("x lies in the cone component opposite the anchor")
    value, lam, spec, dec = _roof_engine(p, j, x, kind, want_decomposition, tol)
    return RoofResult(value=value, lambda_used=lam, kind=kind, spectrum=spec, decomposition=dec)


def _iso_basis_images(phi: PositiveMapH):
    """Output-basis coordinates of the images of the iso basis of H(2)."""
    iso_basis = [lorentz.iso_to_hermitian(lorentz.vector(e)) for e in np.eye(4)]
    cols = np.column_stack([maps.hermitian_coordinates(b) for b in iso_basis])
    out = phi.matrix @ cols
    traces = np.array([np.trace(b).real for b in herm.orthonormal_basis(phi.d2)])
    return out, traces


def roof_h2(
    phi: PositiveMapH,
    x: HermitianMatrix,
    kind: RoofKind,
    want_decomposition: bool = False,
    tol: float = DEFAULT_TOL,
) -> RoofResult:
    """Concurrence / I-fidelity of a positive map with hermitian 2x2 input space.

    Uses the R^4 isomorphism: the pencil of sigma2(phi(.)) against det on
    H(2) becomes a 4x4 symmetric pencil against diag(1,-1,-1,-1).
    Decomposition points come back as rank-1 hermitian matrices.
    """
    if phi.d1 != 2:
        raise InvalidDimensionError("input space must be the hermitian 2x2 matrices")
    if x.d != 2:
        raise InvalidInputError("input matrix must be 2x2")
    if not herm.is_psd(x, tol):
        raise InvalidInputError("input matrix is not positive semidefinite")
    out, traces = _iso_basis_images(phi)
    tr = traces @ out
    p4 = (np.outer(tr, tr) - out.T @ out) / 2.0
    j4 = lorentz.signature_matrix(4)
    x4 = lorentz.iso_from_hermitian(x).x
    value, lam, spec, dec = _roof_engine(p4, j4, x4, kind, want_decomposition, tol)
    if dec is not None:
        dec = ConicDecomposition(
            parts=tuple(
                (w, lorentz.iso_to_hermitian(lorentz.vector(pt))) for w, pt in dec.parts
            ),
            kind=dec.kind,
        )
    return RoofResult(value=value, lambda_used=lam, kind=kind, spectrum=spec, decomposition=dec)


def _sigma2_arr(arr):
    tr = np.trace(arr).real
    return float((tr * tr - np.vdot(arr, arr).real) / 2.0)


def _rank1_result(value, x, kind, want_decomposition):
    dec = None
    if want_decomposition:
        dec = ConicDecomposition(parts=((1.0, x),), kind=DecompositionKind.CONVEX)
    return RoofResult(value=value, lambda_used=0.0, kind=kind, spectrum=None, decomposition=dec)


def roof_rank2(
    phi: PositiveMapH,
    x: HermitianMatrix,
    kind: RoofKind,
    want_decomposition: bool = False,
    tol: float = DEFAULT_TOL,
) -> RoofResult:
    """Roof of an arbitrary positive map at an input of rank at most 2.

    Restricts sigma2 o phi and sigma2 to the 4-dimensional space of matrices
    supported on the range of x and runs the pencil formula there.  Rank-1
    inputs return 2*sqrt(sigma2(phi(x))) directly: the roof equals the
    defining function on extremal points, and padding the range would inject
    an arbitrary subspace into the reported spectrum.
    """
    if x.d != phi.d1:
        raise InvalidInputError(f"map expects size {phi.d1}, matrix has {x.d}")
    if not herm.is_psd(x, tol):
        raise InvalidInputError("input matrix is not positive semidefinite")
    rank = herm.rank_within(x, tol)
    if rank > 2:
        raise RankTooHighError(f"rank {rank} exceeds 2")
    if rank <= 1:
        s2 = _sigma2_arr(maps.apply_positive(phi, x).entries)
        value = 2.0 * float(np.sqrt(max(s2, 0.0)))
        return _rank1_result(value, x, kind, want_decomposition)
    basis = herm.range_subspace(x, tol)
    bin_ = herm.orthonormal_basis(phi.d1)
    traces_out = np.array([np.trace(b).real for b in herm.orthonormal_basis(phi.d2)])

    def q_p(arr):
        coords = np.array([np.vdot(b, arr).real for b in bin_])
        out = phi.matrix @ coords
        t = traces_out @ out
        return float((t * t - out @ out) / 2.0)

    p4 = herm.restrict_form(q_p, basis)
    j4 = herm.restrict_form(_sigma2_arr, basis)
    x4 = herm.subspace_coordinates(x, basis)
    value, lam, spec, dec = _roof_engine(p4, j4, x4, kind, want_decomposition, tol)
    if dec is not None:
        dec = ConicDecomposition(
            parts=tuple((w, herm.from_subspace_coordinates(pt, basis)) for w, pt in dec.parts),
            kind=dec.kind,
        )
    return RoofResult(value=value, lambda_used=lam, kind=kind, spectrum=spec, decomposition=dec)


class Q1Variant(enum.Enum):
    PARTIAL_TRACE_1 = "partial-trace-1"
    PARTIAL_TRACE_2 = "partial-trace-2"
    UNIVERSAL_INVERTER = "universal-inverter"


def _pt1_arr(arr, d1, d2):
    return np.einsum("kikj->ij", arr.reshape(d1, d2, d1, d2))


def _pt2_arr(arr, d1, d2):
    return np.einsum("kili->kl", arr.reshape(d1, d2, d1, d2))


def q2_form(arr):
    """(tr A)^2 - tr(A^2), twice the second symmetric function."""
    tr = np.trace(arr).real
    return float(tr * tr - np.vdot(arr, arr).real)


def q1_form(arr, shape: BipartiteShape, variant: Q1Variant):
    """The boundary-value form of the bipartite roof, in the chosen variant.

    All variants coincide on pure states, so they induce the same roofs; the
    universal-inverter one is the form the graph tabulation reports.
    """
    tr = np.trace(arr).real
    if variant is Q1Variant.PARTIAL_TRACE_1:
        t1 = _pt1_arr(arr, shape.d1, shape.d2)
        return float(2.0 * (tr * tr - np.vdot(t1, t1).real))
    if variant is Q1Variant.PARTIAL_TRACE_2:
        t2 = _pt2_arr(arr, shape.d1, shape.d2)
        return float(2.0 * (tr * tr - np.vdot(t2, t2).real))
    t1 = _pt1_arr(arr, shape.d1, shape.d2)
    t2 = _pt2_arr(arr, shape.d1, shape.d2)
    return float(
        tr * tr - np.vdot(t1, t1).real - np.vdot(t2, t2).real + np.vdot(arr, arr).real
    )


def roof_bipartite(
    m: HermitianMatrix,
    shape: BipartiteShape,
    kind: RoofKind,
    q1_variant: Q1Variant = Q1Variant.UNIVERSAL_INVERTER,
    want_decomposition: bool = False,
    tol: float = DEFAULT_TOL,
) -> RoofResult:
    """Concurrence / I-fidelity of a PSD bipartite matrix of rank at most 2.

    value = sqrt(Q1(M) - lambda*Q2(M)) with lambda the second largest
    (smallest for fidelity) eigenvalue of the pencil Q1 - lambda*Q2
    restricted to the range subspace; this normalization absorbs the factor
    2 of the hermitian entry points because Q1 = 4*sigma2(tr_1(.)) and
    Q2 = 2*sigma2 on pure states.  The reported spectrum and lambda_used
    belong to the (Q1, Q2) pencil.
    """
    shape.check(m.d)
    if not herm.is_psd(m, tol):
        raise InvalidInputError("input matrix is not positive semidefinite")
    rank = herm.rank_within(m, tol)
    if rank > 2:
        raise RankTooHighError(f"rank {rank} exceeds 2")
    if rank <= 1:
        value = float(np.sqrt(max(q1_form(m.entries, shape, q1_variant), 0.0)))
        return _rank1_result(value, m, kind, want_decomposition)
    basis = herm.range_subspace(m, tol)
    p4 = herm.restrict_form(lambda arr: q1_form(arr, shape, q1_variant), basis)
    j4 = herm.restrict_form(q2_form, basis)
    x4 = herm.subspace_coordinates(m, basis)
    # scaling both forms by 1/4 keeps the pencil eigenvalues and turns the
    # generic 2*sqrt into the sqrt(Q1 - lambda*Q2) normalization
    value, lam, spec, dec = _roof_engine(p4 / 4.0, j4 / 4.0, x4, kind, want_decomposition, tol)
    if dec is not None:
        dec = ConicDecomposition(
            parts=tuple((w, herm.from_subspace_coordinates(pt, basis)) for w, pt in dec.parts),
            kind=dec.kind,
        )
    return RoofResult(value=value, lambda_used=lam, kind=kind, spectrum=spec, decomposition=dec)
