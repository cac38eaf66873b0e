"""Polynomial coefficients from roots, reduced polynomials and evaluation.

All coefficient vectors are complex128 arrays in ascending degree order,
``a[m]`` being the coefficient of ``x**m`` of ``prod_k (x - roots[k])``.

Solver keys understood by :func:`get_solver`:

``"p"``
    unit-root sampling plus one FFT (:func:`fft_coefficients`)
``"p-scaled"``
    the same, with roots scaled by ``1/rho`` for ``rho < 1``
``"r"``
    one-root-at-a-time recursion in the given order
``"r+"``
    the recursion after Leja reordering
"""
import warnings

import numpy as np

from . import _kernels
from .errors import PolynomialOverflowError, RootError
from .fft import FORWARD, dft, plan

TAIL_TOLERANCE = 1e-9


def as_roots(roots, allow_zero=False):
    """Validate and convert to a 1-d complex128 array."""
    w = np.ascontiguousarray(np.asarray(roots, dtype=np.complex128).ravel())
    if w.shape[0] < 1:
        raise RootError("at least one root is required")
    if not np.all(np.isfinite(w)):
        raise RootError("roots must be finite")
    if not allow_zero and np.any(w == 0):
        k = int(np.flatnonzero(w == 0)[0])
        raise RootError(f"roots must be nonzero (root {k} is zero)")
    return w


def _as_points(x):
    return np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.complex128)).ravel())


def fft_coefficients(roots, check_tail=True):
    """Coefficients from the values of the product form at unit roots.

    The product ``prod_k (zeta**-j - roots[k])`` is sampled at N > n unit
    roots and transformed with the forward kernel; bins n < m < N must
    vanish and are dropped. Insensitive to the ordering of ``roots``.
    """
    w = as_roots(roots)
    n = w.shape[0]
    fp = plan(n)
    z = fp.unit_roots(sign=-1)
    p = _kernels.products(z, w)
    bad = np.flatnonzero(~np.isfinite(p))
    if bad.size:
        j = int(bad[0])
        raise PolynomialOverflowError(
            f"product at unit root index {j} is not finite", step="products", index=j
        )
    a = dft(fp, p, FORWARD) / fp.size
    if check_tail and fp.size > n + 1:
        tail = np.max(np.abs(a[n + 1 :]))
        head = np.max(np.abs(a[: n + 1]))
        if tail >= TAIL_TOLERANCE * head:
            warnings.warn(
                f"FFT bins above degree {n} are not negligible "
                f"(max {tail:.3g} vs coefficient max {head:.3g})",
                RuntimeWarning,
                stacklevel=2,
            )
    return a[: n + 1].copy()


def recursive_coefficients(roots):
    """Coefficients by folding in roots one at a time, in the given order."""
    w = as_roots(roots)
    a = _kernels.recursion_r(w)
    if not np.all(np.isfinite(a)):
        raise PolynomialOverflowError(
            "recursion produced a non-finite coefficient", step="recursion"
        )
    return a


def leja_permutation(roots):
    """Permutation ``perm`` such that ``roots[perm]`` is in Leja order.

    The first point has maximal modulus; each next point maximizes the
    product of distances to the points already chosen. Ties go to the lowest
    current position.
    """
    w = as_roots(roots, allow_zero=True)
    return np.asarray(_kernels.leja_permutation(w))


def leja_order(roots):
    w = as_roots(roots, allow_zero=True)
    return w[leja_permutation(w)]


def leja_coefficients(roots):
    """Leja reordering followed by :func:`recursive_coefficients`."""
    return recursive_coefficients(leja_order(as_roots(roots)))


def default_scale(roots):
    """``1/rho`` when the largest root modulus ``rho`` is below one, else 1."""
    rho = float(np.max(np.abs(roots)))
    return 1.0 / rho if rho < 1.0 else 1.0


def with_scaling(solver, roots, sigma):
    """Run ``solver`` on ``sigma * roots`` and map the result back.

    The scaled polynomial has coefficients ``sigma**(n-m) * a[m]``, so the
    output is multiplied by ``sigma**(m-n)``.
    """
    w = as_roots(roots)
    sigma = float(sigma)
    if not (sigma > 0.0 and np.isfinite(sigma)):
        raise ValueError(f"scale must be positive and finite, got {sigma}")
    if sigma == 1.0:
        return solver(w)
    n = w.shape[0]
    a = solver(sigma * w)
    with np.errstate(over="ignore", under="ignore"):
        factors = np.power(sigma, np.arange(n + 1) - float(n))
        out = a * factors
    if not np.all(np.isfinite(out)):
        raise PolynomialOverflowError(
            "re-scaled coefficients left the floating point range", step="rescale"
        )
    return out


def fft_coefficients_scaled(roots, sigma=None):
    """:func:`fft_coefficients` with scaling; ``sigma`` defaults to :func:`default_scale`."""
    w = as_roots(roots)
    if sigma is None:
        sigma = default_scale(w)
    return with_scaling(fft_coefficients, w, sigma)


SOLVERS = {
    "p": fft_coefficients,
    "p-scaled": fft_coefficients_scaled,
    "r": recursive_coefficients,
    "r+": leja_coefficients,
}


def get_solver(name):
    key = name.lower().replace("_", "-")
    if key in ("ps", "p-s"):
        key = "p-scaled"
    try:
        return SOLVERS[key]
    except KeyError:
        raise ValueError(
            f"unknown solver {name!r}; choose from {', '.join(SOLVERS)}"
        ) from None


def reduce_root(k, coeffs, roots):
    """Coefficients of ``P(x) / (x - roots[k])`` from those of ``P``.

    ``k`` is a 0-based index into ``roots``. Downward recursion seeded with
    an exact leading 1; ``coeffs`` may be approximate.
    """
    w = _as_points(roots)
    a = np.ascontiguousarray(np.asarray(coeffs, dtype=np.complex128))
    n = w.shape[0]
    if a.shape[0] != n + 1:
        raise ValueError(f"expected {n + 1} coefficients for {n} roots, got {a.shape[0]}")
    if not -n <= k < n:
        raise IndexError(f"root index {k} out of range for {n} roots")
    return _kernels.reduce_columns(a, np.ascontiguousarray(w[[k]]))[:, 0]


def reduced_matrix(coeffs, roots, columns=None):
    """All reduced coefficient vectors at once: ``out[i, c]`` for root ``columns[c]``."""
    w = _as_points(roots)
    if columns is not None:
        w = np.ascontiguousarray(w[np.asarray(columns)])
    a = np.ascontiguousarray(np.asarray(coeffs, dtype=np.complex128))
    return _kernels.reduce_columns(a, w)


def iter_reduced(coeffs, roots, block=256):
    """Yield ``(start, matrix)`` blocks of reduced coefficient columns.

    Working storage stays at ``n * block`` entries.
    """
    w = _as_points(roots)
    a = np.ascontiguousarray(np.asarray(coeffs, dtype=np.complex128))
    for start in range(0, w.shape[0], block):
        yield start, _kernels.reduce_columns(a, np.ascontiguousarray(w[start : start + block]))


def symmetric_functions(roots, solver="p"):
    """Elementary symmetric functions ``e_1..e_n`` of ``roots``.

    Read off the coefficients as ``e_m = (-1)**m * a[n-m]``.
    """
    w = as_roots(roots)
    solve = get_solver(solver) if isinstance(solver, str) else solver
    a = solve(w)
    n = w.shape[0]
    m = np.arange(1, n + 1)
    return np.where(m % 2 == 0, 1.0, -1.0) * a[n - m]


def eval_product(roots, x):
    """``prod_k (x - roots[k])``, accumulated left to right.

    Accepts a scalar or an array. Overflow shows up as a non-finite entry
    rather than an exception.
    """
    w = _as_points(roots)
    pts = _as_points(x)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _kernels.products(pts, w)
    return out[0] if np.ndim(x) == 0 else out.reshape(np.shape(x))


def eval_horner(coeffs, x):
    a = np.ascontiguousarray(np.asarray(coeffs, dtype=np.complex128))
    pts = _as_points(x)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _kernels.horner(a, pts)
    return out[0] if np.ndim(x) == 0 else out.reshape(np.shape(x))
