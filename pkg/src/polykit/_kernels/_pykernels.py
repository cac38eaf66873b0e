"""Pure numpy implementations of the hot loops.

Every kernel vectorizes over the independent axis and keeps the dependent
(accumulation) axis sequential, in the same order as the compiled twin in
``_ckernels.pyx``. Inputs are expected as contiguous complex128 arrays;
the public modules take care of conversion.
"""
import numpy as np

BACKEND = "python"


BIG = 2.0**500
SMALL = 2.0**-500


def _rescale(p, scale):
    # pull powers of two out of running products that drift far from 1; exact
    m = np.maximum(np.abs(p.real), np.abs(p.imag))
    off = ((m > BIG) | ((m < SMALL) & (m > 0.0))) & np.isfinite(m)
    if off.any():
        k = np.frexp(m[off])[1]
        p.real[off] = np.ldexp(p.real[off], -k)
        p.imag[off] = np.ldexp(p.imag[off], -k)
        scale[off] += k


def _unscale(p, scale):
    out = np.empty_like(p)
    with np.errstate(over="ignore", under="ignore"):
        # set parts separately: 1j * inf would put a NaN in the real part
        out.real = np.ldexp(p.real, scale)
        out.imag = np.ldexp(p.imag, scale)
    return out


def products(z, roots):
    """p[j] = prod_k (z[j] - roots[k]), accumulated left to right in k.

    Intermediate products carry a separate power-of-two exponent, so only
    a final value outside the binary64 range overflows or underflows.
    """
    p = np.ones(z.shape[0], dtype=np.complex128)
    scale = np.zeros(z.shape[0], dtype=np.int64)
    for r in roots:
        p *= z - r
        _rescale(p, scale)
    return _unscale(p, scale)


def node_products(x):
    """d[j] = prod_{l != j} (x[j] - x[l]), accumulated in increasing l."""
    n = x.shape[0]
    d = np.ones(n, dtype=np.complex128)
    scale = np.zeros(n, dtype=np.int64)
    for l in range(n):
        f = x - x[l]
        f[l] = 1.0
        d *= f
        _rescale(d, scale)
    return _unscale(d, scale)


def horner(coeffs, x):
    """sum_k coeffs[k] * x**k for every entry of ``x``."""
    s = np.full(x.shape[0], coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        s = s * x + c
    return s


def fft_inplace(x, twiddles, bitrev):
    """Iterative radix-2 DIT transform of ``x`` with the given twiddle table.

    ``twiddles[j]`` is the kernel root raised to ``j`` for ``j < N/2``; the
    sign of the transform is carried entirely by the table.
    """
    n = x.shape[0]
    x[:] = x[bitrev]
    m = 2
    while m <= n:
        half = m // 2
        w = twiddles[:: n // m][:half]
        blocks = x.reshape(n // m, m)
        u = blocks[:, :half].copy()
        t = blocks[:, half:] * w
        blocks[:, :half] = u + t
        blocks[:, half:] = u - t
        m *= 2
    return x


def recursion_r(roots):
    """Coefficients of prod (x - roots[k]) folding one root at a time."""
    n = roots.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    a[n] = 1.0
    for k in range(n):
        lo = n - k - 1
        a[lo:n] = a[lo:n] - roots[k] * a[lo + 1 : n + 1]
    return a


def leja_permutation(roots):
    """Index permutation putting ``roots`` in Leja order.

    Running products use squared moduli and are renormalized by a power of
    two after every update, which is exact and leaves the argmax unchanged.
    """
    n = roots.shape[0]
    w = roots.copy()
    perm = np.arange(n)
    if n == 1:
        return perm
    mod2 = w.real * w.real + w.imag * w.imag
    i = int(np.argmax(mod2))
    w[[0, i]] = w[[i, 0]]
    perm[[0, i]] = perm[[i, 0]]
    p = np.ones(n)
    for k in range(1, n - 1):
        d = w[k - 1] - w[k:]
        p[k:] *= d.real * d.real + d.imag * d.imag
        top = p[k:].max()
        if top > 0.0 and np.isfinite(top):
            p[k:] = np.ldexp(p[k:], -np.frexp(top)[1])
        i = k + int(np.argmax(p[k:]))
        w[[k, i]] = w[[i, k]]
        p[[k, i]] = p[[i, k]]
        perm[[k, i]] = perm[[i, k]]
    return perm


def reduce_columns(coeffs, w):
    """Reduced coefficients for every root in ``w``.

    Column ``c`` holds the coefficients (ascending) of P(x) / (x - w[c]),
    obtained by the downward recursion seeded with a leading 1.
    """
    n = coeffs.shape[0] - 1
    out = np.empty((n, w.shape[0]), dtype=np.complex128)
    out[n - 1] = 1.0
    for i in range(n - 2, -1, -1):
        out[i] = coeffs[i + 1] + w * out[i + 1]
    return out


def cauchy_sum(z, nodes, weights):
    """s[j] = sum_k weights[k] / (z[j] - nodes[k]).

    Also returns ``hit[j]``, the first k with z[j] == nodes[k] exactly, or -1.
    Entries with a hit carry a meaningless sum.
    """
    s = np.zeros(z.shape[0], dtype=np.complex128)
    hit = np.full(z.shape[0], -1, dtype=np.intp)
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(nodes.shape[0]):
            d = z - nodes[k]
            hit[(d == 0) & (hit < 0)] = k
            s += weights[k] / d
    return s, hit
