"""Brute-force roof estimation by searching over decompositions.

Independent of the pencil formulas: the searches only ever evaluate the
defining function on extremal points and combine decompositions, so they can
falsify the closed forms.  Two-point line search suffices in principle (both
roofs are attained on two-point decompositions); the k-point pure-state
search is kept as a hedge that does not presuppose that fact.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels, herm, maps
from .errors import InvalidInputError, RankTooHighError
from .herm import HermitianMatrix
from .maps import PositiveMapH
from .roof import ConicDecomposition, DecompositionKind

DEFAULT_TOL = 1e-9

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleEstimate:
    """Best minimum (toward the concurrence) and maximum (toward the fidelity)
    found, with the witnessing decompositions."""

    lower_kind_value: float
    upper_kind_value: float
    samples: int
    best_decompositions: tuple


def _angles_from_direction(v):
    m = v.shape[0]
    theta = np.zeros(m - 1)
    for i in range(m - 2):
        theta[i] = np.arctan2(np.linalg.norm(v[i + 1 :]), v[i])
    theta[m - 2] = np.arctan2(v[m - 1], v[m - 2])
    return theta


def _direction_from_angles(theta):
    m = theta.shape[0] + 1
    v = np.ones(m)
    for i in range(m - 1):
        v[i] *= np.cos(theta[i])
        v[i + 1 :] *= np.sin(theta[i])
    return v


def _golden_section(f, lo, hi, tol_x, maximize):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol_x:
        keep_left = fc < fd
        if maximize:
            keep_left = not keep_left
        if keep_left:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    if (fc > fd) if maximize else (fc < fd):
        return c, fc
    return d, fd


def _refine_direction(p, j, x, v0, maximize, rounds):
    """Coordinate-wise golden-section over the spherical angles of v0."""
    bad = -np.inf if maximize else np.inf

    def value_at(theta):
        vals, _, _ = _kernels.two_point_scan(p, j, x, _direction_from_angles(theta)[None, :])
        return vals[0] if np.isfinite(vals[0]) else bad

    theta = _angles_from_direction(v0)
    best = value_at(theta)
    h = np.pi / 4.0
    for _ in range(rounds):
        improved = False
        for i in range(theta.shape[0]):
            def f(t, _i=i):
                trial = theta.copy()
                trial[_i] = t
                return value_at(trial)

            t_best, f_best = _golden_section(f, theta[i] - h, theta[i] + h, h * 1e-2, maximize)
            if (f_best > best + 1e-14) if maximize else (f_best < best - 1e-14):
                theta[i] = t_best
                best = f_best
                improved = True
        h *= 0.65
        if h < 1e-4 and not improved:
            break
    return _direction_from_angles(theta), best


def _diverse_starts(dirs, count):
    """Greedy picks in ranking order, skipping near-parallel directions.

    Opposite signs give the same line, so diversity is judged by |cos|."""
    chosen = []
    for v in dirs:
        if len(chosen) == count:
            break
        if all(abs(float(v @ w)) < 0.9 for w in chosen):
            chosen.append(v)
    return chosen if chosen else [dirs[0]]


def _decomposition_for(p, j, x, v):
    vals, tps, tms = _kernels.two_point_scan(p, j, x, v[None, :])
    if not np.isfinite(vals[0]):
        return None, np.nan
    tp, tm = tps[0], tms[0]
    y = x + tp * v
    z = x + tm * v
    mu = -tm / (tp - tm)
    dec = ConicDecomposition(parts=((mu, y), (1.0 - mu, z)), kind=DecompositionKind.CONVEX)
    return dec, float(vals[0])


def two_point_search(
    p,
    j,
    x,
    samples: int,
    seed: int,
    refine_iters: int = 64,
    refine_starts: int = 4,
) -> OracleEstimate:
    """Monte-Carlo minimum and maximum over two-point boundary decompositions.

    Uniform unit directions; lines that do not cross the boundary on both
    sides of x are skipped.  The best few mutually non-parallel incumbents
    (per bound) get ``refine_iters`` rounds of coordinate-wise golden-section
    refinement over their spherical angles, with a bracket that shrinks each
    round.  Deterministic given (seed, samples, refine_iters, refine_starts).
    """
    p = np.asarray(p, dtype=float)
    j = np.asarray(j, dtype=float)
    x = np.asarray(x, dtype=float)
    if samples < 1:
        raise InvalidInputError("need at least one sample")
    if x @ j @ x <= 0.0:
        raise InvalidInputError("x is not interior to the cone")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((samples, x.shape[0]))
    dirs /= np.maximum(np.linalg.norm(dirs, axis=1), 1e-300)[:, None]
    vals, _, _ = _kernels.two_point_scan(p, j, x, dirs)
    finite = np.flatnonzero(np.isfinite(vals))
    if finite.size == 0:
        raise InvalidInputError("no direction produced two boundary hits; x not interior")
    order = finite[np.argsort(vals[finite], kind="stable")]
    lower = float(vals[order[0]])
    upper = float(vals[order[-1]])
    best_dir = {"lower": dirs[order[0]], "upper": dirs[order[-1]]}
    if refine_iters > 0:
        pool = min(finite.size, max(1, 8 * refine_starts))
        for v0 in _diverse_starts(dirs[order[:pool]], max(1, refine_starts)):
            v, val = _refine_direction(p, j, x, v0, maximize=False, rounds=refine_iters)
            if val < lower:
                lower, best_dir["lower"] = float(val), v
        for v0 in _diverse_starts(dirs[order[::-1][:pool]], max(1, refine_starts)):
            v, val = _refine_direction(p, j, x, v0, maximize=True, rounds=refine_iters)
            if val > upper:
                upper, best_dir["upper"] = float(val), v
    dec_lo, _ = _decomposition_for(p, j, x, best_dir["lower"])
    dec_hi, _ = _decomposition_for(p, j, x, best_dir["upper"])
    return OracleEstimate(
        lower_kind_value=lower,
        upper_kind_value=upper,
        samples=samples,
        best_decompositions=(dec_lo, dec_hi),
    )


def pure_state_search(
    phi: PositiveMapH,
    x: HermitianMatrix,
    k: int,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
) -> OracleEstimate:
    """Search over decompositions of x into k pure states.

    Decompositions are parametrized by random k-column isometries mixing the
    scaled range eigenvectors, which reaches every decomposition of a rank-2
    input into k parts.  The minimum estimates the concurrence from above,
    the maximum the fidelity from below.
    """
    if x.d != phi.d1:
        raise InvalidInputError(f"map expects size {phi.d1}, matrix has {x.d}")
    if k < 2:
        raise InvalidInputError("need k >= 2 parts")
    if samples < 1:
        raise InvalidInputError("need at least one sample")
    if not herm.is_psd(x, tol):
        raise InvalidInputError("input matrix is not positive semidefinite")
    rank = herm.rank_within(x, tol)
    if rank > 2:
        raise RankTooHighError(f"rank {rank} exceeds 2")
    basis_in = np.stack(herm.orthonormal_basis(phi.d1))
    traces_out = np.array([np.trace(b).real for b in herm.orthonormal_basis(phi.d2)])

    def piece_values(psis):
        coords = np.einsum("bi,kij,bj->bk", psis.conj(), basis_in, psis).real
        out = coords @ phi.matrix.T
        trs = out @ traces_out
        s2 = np.maximum((trs * trs - np.einsum("bk,bk->b", out, out)) / 2.0, 0.0)
        return 2.0 * np.sqrt(s2)

    if rank <= 1:
        w, v = herm.eigen_hermitian(x)
        psi = np.sqrt(max(w[0], 0.0)) * v[:, 0]
        val = float(piece_values(psi[None, :])[0])
        dec = ConicDecomposition(
            parts=((1.0, x),),
            kind=DecompositionKind.CONVEX,
        )
        return OracleEstimate(
            lower_kind_value=val,
            upper_kind_value=val,
            samples=samples,
            best_decompositions=(dec, dec),
        )
    w, v = herm.eigen_hermitian(x)
    wmat = v[:, :2] * np.sqrt(np.maximum(w[:2], 0.0))
    rng = np.random.default_rng(seed)
    lower = np.inf
    upper = -np.inf
    best = {"lower": None, "upper": None}
    done = 0
    chunk_size = 2048
    while done < samples:
        c = min(chunk_size, samples - done)
        g = rng.standard_normal((c, k, 2, 2))
        gc = g[..., 0] + 1j * g[..., 1]
        q, _ = np.linalg.qr(gc)
        psis = np.einsum("da,cka->cdk", wmat, q.conj())
        flat = psis.transpose(0, 2, 1).reshape(c * k, x.d)
        vals = piece_values(flat).reshape(c, k).sum(axis=1)
        i_min = int(np.argmin(vals))
        i_max = int(np.argmax(vals))
        if vals[i_min] < lower:
            lower = float(vals[i_min])
            best["lower"] = psis[i_min].copy()
        if vals[i_max] > upper:
            upper = float(vals[i_max])
            best["upper"] = psis[i_max].copy()
        done += c

    def to_decomposition(psi_mat):
        parts = []
        for i in range(psi_mat.shape[1]):
            psi = psi_mat[:, i]
            weight = float(np.vdot(psi, psi).real)
            if weight <= tol:
                continue
            unit = psi / np.sqrt(weight)
            parts.append((weight, HermitianMatrix.from_entries(np.outer(unit, unit.conj()))))
        return ConicDecomposition(parts=tuple(parts), kind=DecompositionKind.CONIC)

    return OracleEstimate(
        lower_kind_value=lower,
        upper_kind_value=upper,
        samples=samples,
        best_decompositions=(to_decomposition(best["lower"]), to_decomposition(best["upper"])),
    )
