# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts and loop orders as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, frexp, ldexp, isfinite

cnp.import_array()

BACKEND = "cython"

ctypedef double complex cplx


cdef inline cplx cmul(cplx a, cplx b) noexcept nogil:
    cdef cplx r
    r.real = a.real * b.real - a.imag * b.imag
    r.imag = a.real * b.imag + a.imag * b.real
    return r


cdef inline cplx cdiv(cplx a, cplx b) noexcept nogil:
    # Smith's algorithm, as used by numpy's complex divide loop
    cdef double br = fabs(b.real), bi = fabs(b.imag), rat, scl
    cdef cplx r
    if br >= bi:
        if br == 0.0 and bi == 0.0:
            r.real = a.real / br
            r.imag = a.imag / br
        else:
            rat = b.imag / b.real
            scl = 1.0 / (b.real + b.imag * rat)
            r.real = (a.real + a.imag * rat) * scl
            r.imag = (a.imag - a.real * rat) * scl
    else:
        rat = b.real / b.imag
        scl = 1.0 / (b.imag + b.real * rat)
        r.real = (a.real * rat + a.imag) * scl
        r.imag = (a.imag * rat - a.real) * scl
    return r


cdef double BIG = 2.0 ** 500
cdef double SMALL = 2.0 ** -500


cdef inline cplx rescale(cplx acc, int* scale) noexcept nogil:
    # pull a power of two out of the running product; exact
    cdef double m = fabs(acc.real)
    cdef int k
    if fabs(acc.imag) > m:
        m = fabs(acc.imag)
    if (m > BIG or (m < SMALL and m > 0.0)) and isfinite(m):
        frexp(m, &k)
        acc.real = ldexp(acc.real, -k)
        acc.imag = ldexp(acc.imag, -k)
        scale[0] += k
    return acc


cdef inline cplx unscale(cplx acc, int scale) noexcept nogil:
    acc.real = ldexp(acc.real, scale)
    acc.imag = ldexp(acc.imag, scale)
    return acc


def products(const cplx[::1] z, const cplx[::1] roots):
    cdef Py_ssize_t nz = z.shape[0], nr = roots.shape[0], j, k
    out = np.empty(nz, dtype=np.complex128)
    cdef cplx[::1] p = out
    cdef cplx acc, zj
    cdef int scale
    with nogil:
        for j in range(nz):
            acc = 1.0
            scale = 0
            zj = z[j]
            for k in range(nr):
                acc = rescale(cmul(acc, zj - roots[k]), &scale)
            p[j] = unscale(acc, scale)
    return out


def node_products(const cplx[::1] x):
    cdef Py_ssize_t n = x.shape[0], j, l
    out = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] d = out
    cdef cplx acc
    cdef int scale
    with nogil:
        for j in range(n):
            acc = 1.0
            scale = 0
            for l in range(n):
                if l != j:
                    acc = rescale(cmul(acc, x[j] - x[l]), &scale)
            d[j] = unscale(acc, scale)
    return out


def horner(const cplx[::1] coeffs, const cplx[::1] x):
    cdef Py_ssize_t n = coeffs.shape[0] - 1, nx = x.shape[0], j, k
    out = np.empty(nx, dtype=np.complex128)
    cdef cplx[::1] s = out
    cdef cplx acc, xj
    with nogil:
        for j in range(nx):
            acc = coeffs[n]
            xj = x[j]
            for k in range(n - 1, -1, -1):
                acc = cmul(acc, xj) + coeffs[k]
            s[j] = acc
    return out


def fft_inplace(cplx[::1] x, const cplx[::1] twiddles, const Py_ssize_t[::1] bitrev):
    cdef Py_ssize_t n = x.shape[0], m, half, stride, start, j, a, b
    cdef cplx t, u
    with nogil:
        for j in range(n):
            a = bitrev[j]
            if a > j:
                t = x[j]
                x[j] = x[a]
                x[a] = t
        m = 2
        while m <= n:
            half = m // 2
            stride = n // m
            start = 0
            while start < n:
                for j in range(half):
                    a = start + j
                    b = a + half
                    t = cmul(x[b], twiddles[j * stride])
                    u = x[a]
                    x[a] = u + t
                    x[b] = u - t
                start += m
            m *= 2
    return np.asarray(x)


def recursion_r(const cplx[::1] roots):
    cdef Py_ssize_t n = roots.shape[0], k, m
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] a = out
    cdef cplx w
    a[n] = 1.0
    with nogil:
        for k in range(n):
            w = roots[k]
            for m in range(n - k - 1, n):
                a[m] = a[m] - cmul(w, a[m + 1])
    return out


def leja_permutation(const cplx[::1] roots):
    cdef Py_ssize_t n = roots.shape[0], i, j, k, best
    perm_arr = np.arange(n, dtype=np.intp)
    if n == 1:
        return perm_arr
    w_arr = np.array(roots, dtype=np.complex128)
    p_arr = np.ones(n)
    cdef cplx[::1] w = w_arr
    cdef double[::1] p = p_arr
    cdef Py_ssize_t[::1] perm = perm_arr
    cdef double top, m2
    cdef cplx d, tc
    cdef int e
    with nogil:
        best = 0
        top = w[0].real * w[0].real + w[0].imag * w[0].imag
        for j in range(1, n):
            m2 = w[j].real * w[j].real + w[j].imag * w[j].imag
            if m2 > top:
                top = m2
                best = j
        _swap(w, p, perm, 0, best)
        for k in range(1, n - 1):
            top = -1.0
            best = k
            for j in range(k, n):
                d = w[k - 1] - w[j]
                p[j] = p[j] * (d.real * d.real + d.imag * d.imag)
                if p[j] > top:
                    top = p[j]
                    best = j
            if top > 0.0 and isfinite(top):
                frexp(top, &e)
                for j in range(k, n):
                    p[j] = ldexp(p[j], -e)
            _swap(w, p, perm, k, best)
    return perm_arr


cdef inline void _swap(cplx[::1] w, double[::1] p, Py_ssize_t[::1] perm,
                       Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef cplx tc = w[a]
    cdef double tp = p[a]
    cdef Py_ssize_t ti = perm[a]
    w[a] = w[b]
    w[b] = tc
    p[a] = p[b]
    p[b] = tp
    perm[a] = perm[b]
    perm[b] = ti


def reduce_columns(const cplx[::1] coeffs, const cplx[::1] w):
    cdef Py_ssize_t n = coeffs.shape[0] - 1, nw = w.shape[0], i, c
    out = np.empty((n, nw), dtype=np.complex128)
    cdef cplx[:, ::1] r = out
    with nogil:
        for c in range(nw):
            r[n - 1, c] = 1.0
        for i in range(n - 2, -1, -1):
            for c in range(nw):
                r[i, c] = coeffs[i + 1] + cmul(w[c], r[i + 1, c])
    return out


def cauchy_sum(const cplx[::1] z, const cplx[::1] nodes, const cplx[::1] weights):
    cdef Py_ssize_t nz = z.shape[0], nn = nodes.shape[0], j, k
    s_arr = np.zeros(nz, dtype=np.complex128)
    hit_arr = np.full(nz, -1, dtype=np.intp)
    cdef cplx[::1] s = s_arr
    cdef Py_ssize_t[::1] hit = hit_arr
    cdef cplx acc, d
    with nogil:
        for j in range(nz):
            acc = 0.0
            for k in range(nn):
                d = z[j] - nodes[k]
                if d.real == 0.0 and d.imag == 0.0 and hit[j] < 0:
                    hit[j] = k
                acc = acc + cdiv(weights[k], d)
            s[j] = acc
    return s_arr, hit_arr
