# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense numerical kernels, compiled backend.

Mirrors _kernels_py function for function; see that module for the
algorithm notes.  Inputs and outputs are plain Python lists, all inner
loops run on C arrays.
"""

from libc.math cimport sqrt, cos, sin, M_PI
from libc.stdlib cimport malloc, free

import math

BACKEND = "c"

OFF_TOL = 1e-14
MAX_SWEEPS = 60

cdef double _OFF_TOL = 1e-14
cdef int _MAX_SWEEPS = 60


cdef inline double _cabs2(double complex z):
    return z.real * z.real + z.imag * z.imag


cdef void _jacobi_eigh(int n, double complex *b):
    # cyclic two-sided Jacobi on Hermitian b (row-major); result on diagonal
    cdef int p, q, m, i, sweep
    cdef double fro = 0.0, off, g, alpha, beta, tau, t, c, s
    cdef double complex apq, phase, sp, spc, bmp, bmq, nmp, nmq
    for i in range(n * n):
        fro += _cabs2(b[i])
    fro = sqrt(fro)
    if fro == 0.0:
        return
    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * _cabs2(b[p * n + q])
        if sqrt(off) <= _OFF_TOL * fro:
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = b[p * n + q]
                g = sqrt(_cabs2(apq))
                if g <= 1e-300:
                    continue
                alpha = b[p * n + p].real
                beta = b[q * n + q].real
                phase = apq / g
                tau = (beta - alpha) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                for m in range(n):
                    if m == p or m == q:
                        continue
                    bmp = b[m * n + p]
                    bmq = b[m * n + q]
                    nmp = c * bmp - spc * bmq
                    nmq = sp * bmp + c * bmq
                    b[m * n + p] = nmp
                    b[m * n + q] = nmq
                    b[p * n + m] = nmp.conjugate()
                    b[q * n + m] = nmq.conjugate()
                b[p * n + p] = alpha - t * g
                b[q * n + q] = beta + t * g
                b[p * n + q] = 0
                b[q * n + p] = 0


def eigh_desc(n_in, a):
    """Eigenvalues of a Hermitian n x n matrix (row-major flat list), descending."""
    cdef int n = n_in
    cdef int j, k
    cdef double complex h
    if n == 1:
        return [complex(a[0]).real]
    cdef double complex *b = <double complex *> malloc(n * n * sizeof(double complex))
    if b == NULL:
        raise MemoryError()
    try:
        for j in range(n):
            b[j * n + j] = complex(a[j * n + j]).real
            for k in range(j + 1, n):
                h = 0.5 * (complex(a[j * n + k]) + complex(a[k * n + j]).conjugate())
                b[j * n + k] = h
                b[k * n + j] = h.conjugate()
        _jacobi_eigh(n, b)
        vals = [b[j * n + j].real for j in range(n)]
    finally:
        free(b)
    vals.sort(reverse=True)
    return vals


cdef void _jacobi_onesided(int rows, int cols, double complex *u):
    # u column-major: u[k * rows + i]; orthogonalizes columns in place
    cdef int p, q, i, sweep, rotated
    cdef double app, aqq, g, tau, t, c, s
    cdef double complex apq, phase, sp, spc, vp, vq
    for sweep in range(_MAX_SWEEPS):
        rotated = 0
        for p in range(cols):
            for q in range(p + 1, cols):
                app = 0.0
                aqq = 0.0
                apq = 0
                for i in range(rows):
                    vp = u[p * rows + i]
                    vq = u[q * rows + i]
                    app += _cabs2(vp)
                    aqq += _cabs2(vq)
                    apq += vp.conjugate() * vq
                g = sqrt(_cabs2(apq))
                if g <= _OFF_TOL * sqrt(app * aqq) or g == 0.0:
                    continue
                rotated += 1
                phase = apq / g
                tau = (aqq - app) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                for i in range(rows):
                    vp = u[p * rows + i]
                    vq = u[q * rows + i]
                    u[p * rows + i] = c * vp - spc * vq
                    u[q * rows + i] = sp * vp + c * vq
        if rotated == 0:
            break


def sv_desc(rows_in, cols_in, a):
    """Singular values of a rows x cols matrix (row-major flat list), descending."""
    cdef int rows = rows_in
    cdef int cols = cols_in
    cdef int r, k, i
    cdef double acc
    if rows < cols:
        at = [complex(a[r * cols + k]).conjugate() for k in range(cols) for r in range(rows)]
        return sv_desc(cols, rows, at)
    cdef double complex *u = <double complex *> malloc(rows * cols * sizeof(double complex))
    if u == NULL:
        raise MemoryError()
    try:
        for r in range(rows):
            for k in range(cols):
                u[k * rows + r] = complex(a[r * cols + k])
        if cols > 1:
            _jacobi_onesided(rows, cols, u)
        sv = []
        for k in range(cols):
            acc = 0.0
            for i in range(rows):
                acc += _cabs2(u[k * rows + i])
            sv.append(sqrt(acc))
    finally:
        free(u)
    sv.sort(reverse=True)
    return sv


def swap_eig(x, y):
    """Series (swapping) rule spectrum via the Hermitian eigenvalue route.

    See _kernels_py.swap_eig; inputs may be unnormalized and unsorted.
    """
    cdef int d = len(x)
    cdef int j, k, m, l
    cdef double ang, w
    xs = sorted(x, reverse=True)
    ys = sorted(y, reverse=True)
    if _flatness(ys) < _flatness(xs):
        xs, ys = ys, xs
    if d == 1:
        return [xs[0] * ys[0]]
    cdef double complex *coef = <double complex *> malloc(d * sizeof(double complex))
    cdef double complex *a = <double complex *> malloc(d * d * sizeof(double complex))
    cdef double *rx = <double *> malloc(d * sizeof(double))
    cdef double *yv = <double *> malloc(d * sizeof(double))
    if coef == NULL or a == NULL or rx == NULL or yv == NULL:
        free(coef); free(a); free(rx); free(yv)
        raise MemoryError()
    try:
        for j in range(d):
            rx[j] = sqrt(xs[j]) if xs[j] > 0.0 else 0.0
            yv[j] = ys[j]
        for m in range(d):
            coef[m] = 0
            for l in range(1, d + 1):
                ang = -2.0 * M_PI * m * l / d
                coef[m] = coef[m] + yv[l - 1] * (cos(ang) + 1j * sin(ang))
            coef[m] = coef[m] / d
        for j in range(d):
            for k in range(d):
                a[j * d + k] = rx[j] * rx[k] * coef[((j - k) % d + d) % d]
        _jacobi_eigh(d, a)
        out = []
        for j in range(d):
            w = d * a[j * d + j].real
            if w < 0.0:
                w = 0.0
            out.append(w)
    finally:
        free(coef); free(a); free(rx); free(yv)
    out.sort(reverse=True)
    return out


def _flatness(sorted_desc):
    top = sorted_desc[0]
    if top <= 0.0:
        return 1.0
    return sorted_desc[len(sorted_desc) - 1] / top


def swap_sv(x, y):
    """Series rule spectrum via the singular-value route (cross-check path)."""
    cdef int d = len(x)
    cdef int j, k
    cdef double ang, rd
    xs = sorted(x, reverse=True)
    ys = sorted(y, reverse=True)
    if d == 1:
        return [xs[0] * ys[0]]
    rd = 1.0 / sqrt(d)
    m = [0j] * (d * d)
    rx = [sqrt(v) if v > 0.0 else 0.0 for v in xs]
    ry = [sqrt(v) if v > 0.0 else 0.0 for v in ys]
    for j in range(1, d + 1):
        for k in range(1, d + 1):
            ang = -2.0 * M_PI * j * k / d
            m[(j - 1) * d + (k - 1)] = rx[j - 1] * ry[k - 1] * rd * (cos(ang) + 1j * sin(ang))
    sv = sv_desc(d, d, m)
    return [d * s * s for s in sv]


def purify_kernel(xs, d_in):
    """Purification scan; see _kernels_py.purify_kernel."""
    cdef int d = d_in
    cdef int l
    cdef double s, cap, v
    srt = sorted(xs, reverse=True)
    s = math.fsum(xs)
    out = []
    for l in range(d):
        cap = s / (d - l)
        v = srt[l]
        if cap > v:
            v = cap
        out.append(v)
        s -= v
    return out


def esym(xs, k_in):
    """k-th elementary symmetric polynomial of the entries of xs."""
    cdef int k = k_in
    cdef int n = len(xs)
    cdef int idx, i, top
    cdef double v
    if k == 0:
        return 1.0
    cdef double *e = <double *> malloc((k + 1) * sizeof(double))
    if e == NULL:
        raise MemoryError()
    try:
        for i in range(k + 1):
            e[i] = 0.0
        e[0] = 1.0
        for idx in range(n):
            v = xs[idx]
            top = k if k < idx + 1 else idx + 1
            for i in range(top, 0, -1):
                e[i] += v * e[i - 1]
        result = e[k]
    finally:
        free(e)
    return result
