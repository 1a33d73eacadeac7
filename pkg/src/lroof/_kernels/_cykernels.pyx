"""Compiled implementations of the hot numerical kernels.

Mirrors _pykernels: cyclic Jacobi for hermitian eigenproblems, Francis
double-shift QR for real nonsymmetric eigenvalues, and the batched two-point
decomposition scan.  Keep the two backends in sync; the test suite checks
parity.
"""

import numpy as np

from libc.math cimport sqrt, fabs, copysign, sqrtl

BACKEND = "cython"

cdef double _EPS = 2.220446049250313e-16
cdef long double _EPS_LD = np.finfo(np.longdouble).eps
cdef int _MAX_SWEEPS = 100


def eigh_jacobi(a):
    """Eigendecomposition of a complex hermitian matrix by cyclic Jacobi.

    Returns (w, v), eigenvalues descending, v unitary with eigenvector
    columns.  RuntimeError if not converged after 100 sweeps.
    """
    cdef int d = a.shape[0]
    h_arr = np.array(a, dtype=complex, order="C")
    v_arr = np.eye(d, dtype=complex)
    cdef double complex[:, :] h = h_arr
    cdef double complex[:, :] v = v_arr
    cdef int p, q, i, sweep
    cdef double norm, thresh, skip, off, r, app, aqq, theta, t, c
    cdef double complex apq, sigma, tmpp, tmpq, phase
    if d == 1:
        return np.array([h_arr[0, 0].real]), v_arr
    norm = 0.0
    for p in range(d):
        for q in range(d):
            norm += (h[p, q].real * h[p, q].real + h[p, q].imag * h[p, q].imag)
    norm = sqrt(norm)
    if norm == 0.0:
        return np.zeros(d), v_arr
    thresh = 1e-13 * norm
    skip = thresh / (2.0 * d)
    converged = False
    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += 2.0 * (h[p, q].real * h[p, q].real + h[p, q].imag * h[p, q].imag)
        off = sqrt(off)
        if off <= thresh:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = h[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r <= skip:
                    continue
                app = h[p, p].real
                aqq = h[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                phase = apq / r
                sigma = (t * c) * phase
                for i in range(d):
                    tmpp = h[i, p]
                    tmpq = h[i, q]
                    h[i, p] = c * tmpp - sigma.conjugate() * tmpq
                    h[i, q] = sigma * tmpp + c * tmpq
                for i in range(d):
                    h[p, i] = h[i, p].conjugate()
                    h[q, i] = h[i, q].conjugate()
                h[p, p] = app - t * r
                h[q, q] = aqq + t * r
                h[p, q] = 0.0
                h[q, p] = 0.0
                for i in range(d):
                    tmpp = v[i, p]
                    tmpq = v[i, q]
                    v[i, p] = c * tmpp - sigma.conjugate() * tmpq
                    v[i, q] = sigma * tmpp + c * tmpq
    if not converged:
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += 2.0 * (h[p, q].real * h[p, q].real + h[p, q].imag * h[p, q].imag)
        off = sqrt(off)
        if off > thresh:
            raise RuntimeError("jacobi iteration did not converge in 100 sweeps")
    w = np.real(np.diag(h_arr))
    order = np.argsort(-w, kind="stable")
    return w[order], v_arr[:, order]


cdef void _hessenberg(double[:, :] a, int n):
    cdef int i, jj, k
    cdef double nx, alpha, nu, s
    u_arr = np.zeros(n)
    cdef double[:] u = u_arr
    for k in range(1, n - 1):
        nx = 0.0
        for i in range(k, n):
            nx += a[i, k - 1] * a[i, k - 1]
        nx = sqrt(nx)
        if nx == 0.0:
            continue
        alpha = -copysign(nx, a[k, k - 1]) if a[k, k - 1] != 0.0 else -nx
        nu = 0.0
        for i in range(k, n):
            u[i] = a[i, k - 1]
        u[k] -= alpha
        for i in range(k, n):
            nu += u[i] * u[i]
        nu = sqrt(nu)
        if nu == 0.0:
            continue
        for i in range(k, n):
            u[i] /= nu
        for jj in range(n):
            s = 0.0
            for i in range(k, n):
                s += u[i] * a[i, jj]
            s *= 2.0
            for i in range(k, n):
                a[i, jj] -= s * u[i]
        for i in range(n):
            s = 0.0
            for jj in range(k, n):
                s += a[i, jj] * u[jj]
            s *= 2.0
            for jj in range(k, n):
                a[i, jj] -= s * u[jj]


def real_eigenvalues(a):
    """All eigenvalues (complex array) of a real general square matrix.

    Hessenberg reduction + Francis double-shift QR, exceptional shifts at
    iterations 10 and 20, RuntimeError after 30 per eigenvalue.
    """
    cdef int n = a.shape[0]
    h_arr = np.array(a, dtype=float, order="C")
    if n == 1:
        return h_arr[0, 0] + 0j * np.zeros(1)
    cdef double[:, :] h = h_arr
    _hessenberg(h, n)
    wr_arr = np.zeros(n)
    wi_arr = np.zeros(n)
    cdef double[:] wr = wr_arr
    cdef double[:] wi = wi_arr
    cdef double anorm = 0.0
    cdef int i, jj, k, l, ll, m, mm, nn, its, mmin
    cdef double t, s, x, y, w, p, q, r, z, u, vv
    for i in range(n):
        for jj in range(n):
            anorm += fabs(h[i, jj])
    if anorm == 0.0:
        return np.zeros(n, dtype=complex)
    t = 0.0
    nn = n - 1
    while nn >= 0:
        its = 0
        while True:
            l = 0
            for ll in range(nn, 0, -1):
                s = fabs(h[ll - 1, ll - 1]) + fabs(h[ll, ll])
                if s == 0.0:
                    s = anorm
                if fabs(h[ll, ll - 1]) <= _EPS * s:
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
                z = sqrt(fabs(q))
                x += t
                if q >= 0.0:
                    z = p + copysign(z, p)
                    wr[nn - 1] = x + z
                    wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = 0.0
                    wi[nn] = 0.0
                else:
                    wr[nn - 1] = x + p
                    wr[nn] = x + p
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
                s = fabs(h[nn, nn - 1]) + fabs(h[nn - 1, nn - 2])
                x = 0.75 * s
                y = x
                w = -0.4375 * s * s
            its += 1
            m = l
            p = 0.0
            q = 0.0
            r = 0.0
            for mm in range(nn - 2, l - 1, -1):
                m = mm
                z = h[mm, mm]
                r = x - z
                s = y - z
                p = (r * s - w) / h[mm + 1, mm] + h[mm, mm + 1]
                q = h[mm + 1, mm + 1] - z - r - s
                r = h[mm + 2, mm + 1]
                s = fabs(p) + fabs(q) + fabs(r)
                p /= s
                q /= s
                r /= s
                if mm == l:
                    break
                u = fabs(h[mm, mm - 1]) * (fabs(q) + fabs(r))
                vv = fabs(p) * (fabs(h[mm - 1, mm - 1]) + fabs(z) + fabs(h[mm + 1, mm + 1]))
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
                    x = fabs(p) + fabs(q) + fabs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = copysign(sqrt(p * p + q * q + r * r), p)
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
                for jj in range(k, nn + 1):
                    p = h[k, jj] + q * h[k + 1, jj]
                    if k != nn - 1:
                        p += r * h[k + 2, jj]
                        h[k + 2, jj] -= p * z
                    h[k + 1, jj] -= p * y
                    h[k, jj] -= p * x
                mmin = nn if nn < k + 3 else k + 3
                for i in range(l, mmin + 1):
                    p = x * h[i, k] + y * h[i, k + 1]
                    if k != nn - 1:
                        p += z * h[i, k + 2]
                        h[i, k + 2] -= p * r
                    h[i, k + 1] -= p * q
                    h[i, k] -= p
    return wr_arr + 1j * wi_arr


def two_point_scan(p, j, x, dirs):
    """Two-point decomposition values of x along a batch of directions.

    Semantics identical to the pure backend: NaN where the line through x
    along the direction does not cross {J = 0} on both sides; roots and
    boundary form values in long double, values below the extended-precision
    noise (64 eps_ld ||p|| ||y||^2) count as zero.
    Returns (values, t_plus, t_minus) as float64.
    """
    p_arr = np.ascontiguousarray(p, dtype=float)
    j_arr = np.ascontiguousarray(j, dtype=float)
    x_arr = np.ascontiguousarray(x, dtype=float)
    d_arr = np.ascontiguousarray(dirs, dtype=float)
    cdef int m = x_arr.shape[0]
    cdef int nd = d_arr.shape[0]
    vals_arr = np.full(nd, np.nan)
    tps_arr = np.full(nd, np.nan)
    tms_arr = np.full(nd, np.nan)
    cdef const double[:, :] pm = p_arr
    cdef const double[:, :] jm = j_arr
    cdef const double[:] xv = x_arr
    cdef const double[:, :] dv = d_arr
    cdef double[:] vals = vals_arr
    cdef double[:] tps = tps_arr
    cdef double[:] tms = tms_arr
    cdef long double c = 0.0, pnorm = 0.0, jnorm = 0.0
    cdef int i, k, row
    cdef long double a, b, disc, sq, qq, t1, t2, tp, tm, py, pz, ny, nz, mu, si, yi, zi
    jx_arr = j_arr @ x_arr
    cdef const double[:] jxv = jx_arr
    for i in range(m):
        c += <long double> xv[i] * <long double> jxv[i]
        for k in range(m):
            pnorm += <long double> pm[i, k] * <long double> pm[i, k]
            jnorm += <long double> jm[i, k] * <long double> jm[i, k]
    pnorm = sqrtl(pnorm)
    jnorm = sqrtl(jnorm)
    cdef long double athresh = -1e-12 * jnorm
    cdef long double pclamp = 64.0 * _EPS_LD * pnorm
    for row in range(nd):
        a = 0.0
        b = 0.0
        for i in range(m):
            si = 0.0
            for k in range(m):
                si += <long double> jm[i, k] * <long double> dv[row, k]
            a += <long double> dv[row, i] * si
            b += <long double> dv[row, i] * <long double> jxv[i]
        b *= 2.0
        if a >= athresh:
            continue
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            disc = 0.0
        sq = sqrtl(disc)
        qq = -0.5 * (b + (sq if b >= 0.0 else -sq))
        t1 = qq / a
        t2 = c / qq
        tp = t1 if t1 > t2 else t2
        tm = t1 if t1 < t2 else t2
        py = 0.0
        pz = 0.0
        ny = 0.0
        nz = 0.0
        for i in range(m):
            yi = <long double> xv[i] + tp * <long double> dv[row, i]
            zi = <long double> xv[i] + tm * <long double> dv[row, i]
            ny += yi * yi
            nz += zi * zi
            si = 0.0
            for k in range(m):
                si += <long double> pm[i, k] * (<long double> xv[k] + tp * <long double> dv[row, k])
            py += yi * si
            si = 0.0
            for k in range(m):
                si += <long double> pm[i, k] * (<long double> xv[k] + tm * <long double> dv[row, k])
            pz += zi * si
        if py <= pclamp * ny:
            py = 0.0
        if pz <= pclamp * nz:
            pz = 0.0
        mu = -tm / (tp - tm)
        vals[row] = <double> (mu * 2.0 * sqrtl(py) + (1.0 - mu) * 2.0 * sqrtl(pz))
        tps[row] = <double> tp
        tms[row] = <double> tm
    return vals_arr, tps_arr, tms_arr
