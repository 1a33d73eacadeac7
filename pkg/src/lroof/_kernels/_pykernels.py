"""Pure-Python (NumPy) implementations of the hot numerical kernels.

Same algorithms as the compiled backend, so results agree to rounding:

* ``eigh_jacobi``      -- cyclic Jacobi with complex rotations for hermitian
                          matrices; robust at the desk scales used here.
* ``real_eigenvalues`` -- Householder reduction to upper Hessenberg followed
                          by Francis double-shift QR (eigenvalues only).
* ``two_point_scan``   -- for a batch of directions, intersect the line
                          through an interior point with the quadric J = 0 and
                          evaluate the induced two-point decomposition value.
"""

import numpy as np

BACKEND = "python"

_EPS = np.finfo(float).eps
_EPS_LD = float(np.finfo(np.longdouble).eps)
_MAX_SWEEPS = 100


def eigh_jacobi(a):
    """Eigendecomposition of a complex hermitian matrix by cyclic Jacobi.

    Returns (w, v) with eigenvalues w sorted descending and unitary v whose
    columns are the matching eigenvectors.  Raises RuntimeError if the
    off-diagonal norm has not dropped below 1e-13 * ||a||_F after 100 sweeps.
    """
    a = np.asarray(a, dtype=complex)
    d = a.shape[0]
    h = a.copy()
    v = np.eye(d, dtype=complex)
    if d == 1:
        return np.array([h[0, 0].real]), v
    norm = np.linalg.norm(h)
    if norm == 0.0:
        return np.zeros(d), v
    thresh = 1e-13 * norm
    skip = thresh / (2.0 * d)
    converged = False
    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(2.0) * np.linalg.norm(h[np.triu_indices(d, 1)])
        if off <= thresh:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = h[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = h[p, p].real
                aqq = h[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                sigma = (t * c) * (apq / r)
                colp = h[:, p].copy()
                colq = h[:, q].copy()
                h[:, p] = c * colp - np.conj(sigma) * colq
                h[:, q] = sigma * colp + c * colq
                h[p, :] = np.conj(h[:, p])
                h[q, :] = np.conj(h[:, q])
                h[p, p] = app - t * r
                h[q, q] = aqq + t * r
                h[p, q] = 0.0
                h[q, p] = 0.0
                colp = v[:, p].copy()
                colq = v[:, q].copy()
                v[:, p] = c * colp - np.conj(sigma) * colq
                v[:, q] = sigma * colp + c * colq
    else:
        converged = False
    if not converged:
        off = np.sqrt(2.0) * np.linalg.norm(h[np.triu_indices(d, 1)])
        if off > thresh:
            raise RuntimeError("jacobi iteration did not converge in 100 sweeps")
    w = np.real(np.diag(h))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _hessenberg(a):
    """In-place Householder reduction of a real square matrix to upper Hessenberg."""
    n = a.shape[0]
    for k in range(1, n - 1):
        x = a[k:, k - 1]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        alpha = -np.copysign(nx, x[0]) if x[0] != 0.0 else -nx
        u = x.copy()
        u[0] -= alpha
        nu = np.linalg.norm(u)
        if nu == 0.0:
            continue
        u /= nu
        a[k:, :] -= 2.0 * np.outer(u, u @ a[k:, :])
        a[:, k:] -= 2.0 * np.outer(a[:, k:] @ u, u)
    return a


def real_eigenvalues(a):
    """All eigenvalues (as a complex array) of a real general square matrix.

    Hessenberg reduction followed by the classic Francis double-shift QR with
    exceptional shifts every 10 stalled iterations; RuntimeError after 30
    iterations on one eigenvalue.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a[0, 0] + 0j * np.zeros(1)
    h = _hessenberg(a)
    wr = np.zeros(n)
    wi = np.zeros(n)
    anorm = np.sum(np.abs(h))
    if anorm == 0.0:
        return np.zeros(n, dtype=complex)
    t = 0.0
    nn = n - 1
    while nn >= 0:
        its = 0
        while True:
            l = 0
            for ll in range(nn, 0, -1):
                s = abs(h[ll - 1, ll - 1]) + abs(h[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(h[ll, ll - 1]) <= _EPS * s:
                    h[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = h[nn, nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
                break
            y = h[nn - 1, nn - 1]
            w = h[nn, nn - 1] * h[nn - 1, nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = np.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + np.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn] = z
                    wi[nn - 1] = -z
                nn -= 2
                break
            if its == 30:
                raise RuntimeError("qr iteration did not converge in 30 steps")
            if its == 10 or its == 20:
                t += x
                for i in range(nn + 1):
                    h[i, i] -= x
                s = abs(h[nn, nn - 1]) + abs(h[nn - 1, nn - 2])
                y = x = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            m = l
            for mm in range(nn - 2, l - 1, -1):
                m = mm
                z = h[mm, mm]
                r = x - z
                s = y - z
                p = (r * s - w) / h[mm + 1, mm] + h[mm, mm + 1]
                q = h[mm + 1, mm + 1] - z - r - s
                r = h[mm + 2, mm + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if mm == l:
                    break
                u = abs(h[mm, mm - 1]) * (abs(q) + abs(r))
                vv = abs(p) * (abs(h[mm - 1, mm - 1]) + abs(z) + abs(h[mm + 1, mm + 1]))
                if u <= _EPS * vv:
                    break
            for i in range(m + 2, nn + 1):
                h[i, i - 2] = 0.0
            for i in range(m + 3, nn + 1):
                h[i, i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = h[k, k - 1]
                    q = h[k + 1, k - 1]
                    r = h[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = np.copysign(np.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        h[k, k - 1] = -h[k, k - 1]
                else:
                    h[k, k - 1] = -s * x
                p += s
                x = p / s
                y = q / s
                z = r / s
                q /= p
                r /= p
                for j in range(k, nn + 1):
                    p = h[k, j] + q * h[k + 1, j]
                    if k != nn - 1:
                        p += r * h[k + 2, j]
                        h[k + 2, j] -= p * z
                    h[k + 1, j] -= p * y
                    h[k, j] -= p * x
                mmin = nn if nn < k + 3 else k + 3
                for i in range(l, mmin + 1):
                    p = x * h[i, k] + y * h[i, k + 1]
                    if k != nn - 1:
                        p += z * h[i, k + 2]
                        h[i, k + 2] -= p * r
                    h[i, k + 1] -= p * q
                    h[i, k] -= p
    return wr + 1j * wi


def two_point_scan(p, j, x, dirs):
    """Two-point decomposition values of x along a batch of directions.

    For each row v of ``dirs`` the line x + t v is intersected with the
    quadric {y : y^T j y = 0}; when it crosses on both sides of x the value
    mu*2*sqrt(P(y)) + (1-mu)*2*sqrt(P(z)) of the induced convex decomposition
    x = mu y + (1-mu) z is reported.  Directions whose line does not cross on
    both sides give NaN.  Roots and boundary form values are computed in long
    double: P(y) vanishes on the quadric for boundary-supported forms, and
    plain doubles would turn that zero into a sqrt(eps) noise floor.  Values
    below the extended-precision noise (64 eps_ld ||p|| ||y||^2) count as
    zero.  Returns (values, t_plus, t_minus) as float64.
    """
    ld = np.longdouble
    p = np.asarray(p, dtype=ld)
    j = np.asarray(j, dtype=ld)
    x = np.asarray(x, dtype=ld)
    dirs = np.asarray(dirs, dtype=ld)
    c = x @ j @ x
    jx = j @ x
    a = np.einsum("ni,ij,nj->n", dirs, j, dirs)
    b = 2.0 * dirs @ jx
    athresh = -1e-12 * float(np.sqrt(np.sum(j * j)))
    ok = a < athresh
    n = dirs.shape[0]
    vals = np.full(n, np.nan)
    tps = np.full(n, np.nan)
    tms = np.full(n, np.nan)
    if not np.any(ok):
        return vals, tps, tms
    aa = a[ok]
    bb = b[ok]
    disc = bb * bb - 4.0 * aa * c
    sq = np.sqrt(np.maximum(disc, ld(0.0)))
    qq = -0.5 * (bb + np.where(bb >= 0.0, sq, -sq))
    t1 = qq / aa
    t2 = c / qq
    tp = np.maximum(t1, t2)
    tm = np.minimum(t1, t2)
    y = x[None, :] + tp[:, None] * dirs[ok]
    z = x[None, :] + tm[:, None] * dirs[ok]
    pnorm = np.sqrt(np.sum(p * p))
    py = np.einsum("ni,ij,nj->n", y, p, y)
    pz = np.einsum("ni,ij,nj->n", z, p, z)
    clamp = 64.0 * _EPS_LD * pnorm
    py[py <= clamp * np.einsum("ni,ni->n", y, y)] = 0.0
    pz[pz <= clamp * np.einsum("ni,ni->n", z, z)] = 0.0
    mu = -tm / (tp - tm)
    vals[ok] = (mu * 2.0 * np.sqrt(py) + (1.0 - mu) * 2.0 * np.sqrt(pz)).astype(float)
    tps[ok] = tp.astype(float)
    tms[ok] = tm.astype(float)
    return vals, tps, tms
