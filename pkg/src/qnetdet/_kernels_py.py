"""Dense numerical kernels, pure-Python reference backend.

All kernels operate on flat Python lists and are sized for the small
matrices this package needs (dimension <= 16).  The compiled backend in
_kernels_c.pyx mirrors this module function for function; tests compare
the two directly.

Eigenvalues use a two-sided cyclic Jacobi iteration, singular values a
one-sided Jacobi iteration on columns.  On positive semidefinite inputs
Jacobi delivers high relative accuracy even for small eigenvalues, which
the determinant identities exercised by the verifier depend on.
"""

from __future__ import annotations

import cmath
import math

BACKEND = "py"

# Convergence threshold on relative off-diagonal mass.
OFF_TOL = 1e-14
MAX_SWEEPS = 60


def eigh_desc(n, a):
    """Eigenvalues of a Hermitian n x n matrix, descending.

    Parameters
    ----------
    n : int
        Matrix dimension.
    a : list of complex
        Row-major entries, length n*n.  Only the Hermitian part
        (A + A^H)/2 is diagonalized, so tiny anti-Hermitian noise in
        the input is harmless.

    Returns
    -------
    list of float
        The n eigenvalues sorted in descending order.
    """
    if n == 1:
        return [complex(a[0]).real]
    b = [0j] * (n * n)
    for j in range(n):
        b[j * n + j] = complex(complex(a[j * n + j]).real)
        for k in range(j + 1, n):
            h = 0.5 * (complex(a[j * n + k]) + complex(a[k * n + j]).conjugate())
            b[j * n + k] = h
            b[k * n + j] = h.conjugate()
    fro = math.sqrt(sum(abs(v) * abs(v) for v in b))
    if fro == 0.0:
        return [0.0] * n
    stop = OFF_TOL * fro
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for j in range(n):
            for k in range(j + 1, n):
                off += 2.0 * abs(b[j * n + k]) ** 2
        if math.sqrt(off) <= stop:
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = b[p * n + q]
                g = abs(apq)
                if g <= 1e-300:
                    continue
                alpha = b[p * n + p].real
                beta = b[q * n + q].real
                phase = apq / g
                tau = (beta - alpha) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
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
                b[p * n + p] = complex(alpha - t * g)
                b[q * n + q] = complex(beta + t * g)
                b[p * n + q] = 0j
                b[q * n + p] = 0j
    vals = [b[j * n + j].real for j in range(n)]
    vals.sort(reverse=True)
    return vals


def sv_desc(rows, cols, a):
    """Singular values of a rows x cols matrix, descending.

    `a` is the row-major flat list of complex entries.  Returns the
    min(rows, cols) singular values via one-sided Jacobi, which keeps
    small singular values at high relative accuracy.
    """
    if rows < cols:
        # work on the conjugate transpose, same singular values
        at = [complex(a[r * cols + c]).conjugate() for c in range(cols) for r in range(rows)]
        return sv_desc(cols, rows, at)
    # column-major storage: u[k] is column k
    u = [[complex(a[r * cols + k]) for r in range(rows)] for k in range(cols)]
    if cols == 1:
        return [math.sqrt(sum(abs(v) ** 2 for v in u[0]))]
    for _ in range(MAX_SWEEPS):
        rotated = 0
        for p in range(cols):
            for q in range(p + 1, cols):
                up = u[p]
                uq = u[q]
                app = 0.0
                aqq = 0.0
                apq = 0j
                for i in range(rows):
                    vp = up[i]
                    vq = uq[i]
                    app += vp.real * vp.real + vp.imag * vp.imag
                    aqq += vq.real * vq.real + vq.imag * vq.imag
                    apq += vp.conjugate() * vq
                g = abs(apq)
                if g <= OFF_TOL * math.sqrt(app * aqq) or g == 0.0:
                    continue
                rotated += 1
                phase = apq / g
                tau = (aqq - app) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                for i in range(rows):
                    vp = up[i]
                    vq = uq[i]
                    up[i] = c * vp - spc * vq
                    uq[i] = sp * vp + c * vq
        if rotated == 0:
            break
    sv = [math.sqrt(sum(v.real * v.real + v.imag * v.imag for v in col)) for col in u]
    sv.sort(reverse=True)
    return sv


def swap_eig(x, y):
    """Spectrum of the series (swapping) rule, unnormalized inputs allowed.

    Computes d * eig(A) with A = diag(sqrt(x)) W diag(sqrt(x)) where
    W = V diag(y) V^H and V is the d-dimensional Fourier matrix with
    1-based indices.  Entries of W depend only on index differences, so
    the matrix is assembled from d circulant coefficients.

    Returns a descending list of length d scaled so that the total equals
    sum(x) * sum(y).
    """
    d = len(x)
    xs = sorted(x, reverse=True)
    ys = sorted(y, reverse=True)
    # the eigenvalue relative accuracy is governed by the conditioning of
    # the inner vector, so commutativity is used to put the flatter
    # vector on the inside
    if _flatness(ys) < _flatness(xs):
        xs, ys = ys, xs
    if d == 1:
        return [xs[0] * ys[0]]
    coef = [0j] * d
    for m in range(d):
        acc = 0j
        for l in range(1, d + 1):
            acc += ys[l - 1] * cmath.exp(-2j * cmath.pi * m * l / d)
        coef[m] = acc / d
    rx = [math.sqrt(v) if v > 0.0 else 0.0 for v in xs]
    a = [0j] * (d * d)
    for j in range(d):
        for k in range(d):
            a[j * d + k] = rx[j] * rx[k] * coef[(j - k) % d]
    vals = eigh_desc(d, a)
    out = []
    for v in vals:
        w = d * v
        if w < 0.0:
            w = 0.0
        out.append(w)
    return out


def _flatness(sorted_desc):
    top = sorted_desc[0]
    if top <= 0.0:
        return 1.0
    return sorted_desc[-1] / top


def swap_sv(x, y):
    """Series rule spectrum via singular values of the asymmetric product.

    Same value as swap_eig; kept as an independent route for cross checks.
    """
    d = len(x)
    xs = sorted(x, reverse=True)
    ys = sorted(y, reverse=True)
    if d == 1:
        return [xs[0] * ys[0]]
    rx = [math.sqrt(v) if v > 0.0 else 0.0 for v in xs]
    ry = [math.sqrt(v) if v > 0.0 else 0.0 for v in ys]
    rd = 1.0 / math.sqrt(d)
    m = [0j] * (d * d)
    for j in range(1, d + 1):
        for k in range(1, d + 1):
            m[(j - 1) * d + (k - 1)] = rx[j - 1] * ry[k - 1] * rd * cmath.exp(-2j * cmath.pi * j * k / d)
    sv = sv_desc(d, d, m)
    return [d * s * s for s in sv]


def purify_kernel(xs, d):
    """Purification scan: largest-entry-or-equal-share sweep.

    Maps a nonnegative vector of length m >= d to a descending vector of
    length d with the same total: entry l is the larger of the l-th
    largest input entry and an equal share of the remaining mass.
    """
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


def esym(xs, k):
    """k-th elementary symmetric polynomial of the entries of xs."""
    if k == 0:
        return 1.0
    e = [0.0] * (k + 1)
    e[0] = 1.0
    for idx, v in enumerate(xs):
        top = min(k, idx + 1)
        for i in range(top, 0, -1):
            e[i] += v * e[i - 1]
    return e[k]
