"""Radix-2 Cooley-Tukey transform.

Conventions: with ``zeta = exp(2j*pi/N)`` the *forward* transform is
``X[m] = sum_j x[j] * zeta**(j*m)`` (positive exponent) and the *inverse*
uses ``zeta**(-j*m)``. Neither direction divides by ``N``.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels

FORWARD = "forward"
INVERSE = "inverse"


@dataclass(frozen=True, eq=False)
class FftPlan:
    """Precomputed tables for a transform of ``size`` points."""

    size: int
    twiddles: np.ndarray
    bitrev: np.ndarray

    @property
    def n_points(self):
        return self.size

    @property
    def root(self):
        """The kernel root of unity exp(2j*pi/N)."""
        return self.twiddles[1] if self.size > 2 else complex(-1.0, 0.0)

    def unit_roots(self, sign=1):
        """All powers ``zeta**(sign*j)``, j = 0..N-1."""
        return unit_roots(self.size, sign)


def unit_roots(m, sign=1):
    """``exp(sign * 2j*pi*k/m)`` for k = 0..m-1, built by octant symmetry.

    Each value is computed from an angle of at most pi/4 and then reflected
    or rotated exactly, so ``roots[m-k] == conj(roots[k])`` bit for bit and
    the rounding of pi does not bias the angles in one direction.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    k = np.arange(m, dtype=np.int64)
    quadrant, rem = np.divmod(4 * k, m)
    mirror = 2 * rem > m
    r = np.where(mirror, m - rem, rem)
    alpha = np.pi * r / (2.0 * m)
    c, s = np.cos(alpha), np.sin(alpha)
    s = np.where(2 * rem == m, c, s)  # pi/4 exactly: keep cos == sin
    re = np.where(mirror, s, c)
    im = np.where(mirror, c, s)
    # rotate by i**quadrant
    for q, (fr, fi) in enumerate(((re, im), (-im, re), (-re, -im), (im, -re))):
        sel = quadrant == q
        re, im = np.where(sel, fr, re), np.where(sel, fi, im)
    out = re + 1j * im
    return np.conj(out) if sign < 0 else out


def plan_size(n):
    """Smallest power of two strictly greater than ``n`` (at least 2)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"transform length needs n >= 1, got {n}")
    return 1 << n.bit_length()


def _bit_reversal(size):
    bits = size.bit_length() - 1
    idx = np.arange(size)
    rev = np.zeros(size, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def plan(n):
    """Build the plan for degree-``n`` work: N is the power of two with n < N <= 2n."""
    size = plan_size(n)
    return plan_for_size(size)


def plan_for_size(size):
    size = int(size)
    if size < 2 or size & (size - 1):
        raise ValueError(f"FFT size must be a power of two >= 2, got {size}")
    twiddles = unit_roots(size)[: size // 2].copy()
    twiddles.setflags(write=False)
    bitrev = _bit_reversal(size)
    bitrev.setflags(write=False)
    return FftPlan(size, twiddles, bitrev)


def dft(fft_plan, x, direction=FORWARD):
    """Transform ``x`` (length ``fft_plan.size``); returns a new array."""
    x = np.array(x, dtype=np.complex128, copy=True).ravel()
    if x.shape[0] != fft_plan.size:
        raise ValueError(
            f"input has length {x.shape[0]}, plan expects {fft_plan.size}"
        )
    if direction == FORWARD:
        tw = fft_plan.twiddles
    elif direction == INVERSE:
        tw = np.conj(fft_plan.twiddles)
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    tw = np.ascontiguousarray(tw)
    return _kernels.fft_inplace(x, tw, np.ascontiguousarray(fft_plan.bitrev))
