"""Inversion of Vandermonde matrices and Vandermonde systems.

Conventions: for parameters ``w[0..n-1]`` the Vandermonde matrix is
``V[i, j] = w[i]**j`` (one row per parameter, one column per power). Its
inverse has entries ``M[i, j] = r_j[i] / prod_{l != j}(w[j] - w[l])`` where
``r_j`` are the coefficients of the polynomial with root ``w[j]`` removed,
so row ``i`` of ``M`` is a degree and column ``j`` a parameter, in the
caller's order.

Methods:

``"pp"``
    coefficients by FFT (scaled by ``1/rho`` when ``rho < 1``)
``"pt+"``
    coefficients by the Leja-ordered recursion
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coeffs import as_roots, fft_coefficients_scaled, leja_coefficients
from .errors import PolynomialOverflowError, SingularityError

STREAMING_THRESHOLD = 1024

METHODS = {
    "pp": fft_coefficients_scaled,
    "pt+": leja_coefficients,
}


def _coefficient_solver(method):
    key = method.lower()
    if key in ("pt", "pt-plus"):
        key = "pt+"
    try:
        return METHODS[key]
    except KeyError:
        raise ValueError(f"unknown inversion method {method!r}; use 'pp' or 'pt+'") from None


@dataclass(eq=False)
class InverseVandermonde:
    matrix: np.ndarray
    params: np.ndarray
    method: str = "pp"

    @property
    def n(self):
        return self.params.shape[0]

    def solve(self, d):
        return solve_system(self, d)

    def product_entries(self, rows, cols):
        """Selected entries of ``V @ M``; each costs O(n)."""
        return product_entries(self.params, self.matrix, rows, cols)

    def residual(self):
        """``max |V @ M - I|`` from the full O(n**3) product."""
        v = vandermonde_matrix(self.params)
        return float(np.max(np.abs(v @ self.matrix - np.eye(self.n))))


def vandermonde_matrix(params):
    w = np.asarray(params, dtype=np.complex128)
    return np.power.outer(w, np.arange(w.shape[0]))


def product_entries(params, matrix, rows, cols):
    w = np.asarray(params, dtype=np.complex128)
    powers = np.arange(w.shape[0])
    rows = np.atleast_1d(rows)
    cols = np.atleast_1d(cols)
    return np.array(
        [np.dot(np.power(w[i], powers), matrix[:, k]) for i, k in zip(rows, cols)]
    )


def _denominators(w):
    d = _kernels.node_products(w)
    zero = np.flatnonzero(d == 0)
    if zero.size:
        j = int(zero[0])
        others = np.flatnonzero(w == w[j])
        if others.size > 1:
            raise SingularityError(
                f"singular Vandermondian: parameters {others.tolist()} coincide"
            )
        raise PolynomialOverflowError(
            f"denominator product for parameter {j} underflows", step="denominators", index=j
        )
    if not np.all(np.isfinite(d)):
        raise PolynomialOverflowError(
            "denominator product is not finite", step="denominators",
            index=int(np.flatnonzero(~np.isfinite(d))[0]),
        )
    return d


def _prepare(params, method):
    w = as_roots(params)
    solve = _coefficient_solver(method)
    d = _denominators(w)
    a = np.ascontiguousarray(solve(w))
    return w, a, d


def invert(params, method="pp"):
    """Dense inverse of the Vandermonde matrix of ``params``."""
    w, a, d = _prepare(params, method)
    m = _kernels.reduce_columns(a, w) / d
    if not np.all(np.isfinite(m)):
        raise PolynomialOverflowError("inverse has non-finite entries", step="entries")
    return InverseVandermonde(m, w, method)


def invert_fft(params):
    return invert(params, "pp")


def invert_leja(params):
    return invert(params, "pt+")


def iter_columns(params, method="pp", block=1):
    """Yield ``(j, column_j)`` of the inverse without materializing it.

    Extra storage beyond the O(n) coefficient and denominator vectors is
    ``n * block`` entries.
    """
    w, a, d = _prepare(params, method)
    n = w.shape[0]
    for start in range(0, n, block):
        stop = min(start + block, n)
        cols = _kernels.reduce_columns(a, np.ascontiguousarray(w[start:stop])) / d[start:stop]
        if not np.all(np.isfinite(cols)):
            raise PolynomialOverflowError(
                "inverse has non-finite entries", step="entries", index=start
            )
        for c in range(stop - start):
            yield start + c, cols[:, c]


def solve_system(inv, d):
    """``M @ d`` for an :class:`InverseVandermonde` ``inv``."""
    d = np.asarray(d, dtype=np.complex128).ravel()
    if d.shape[0] != inv.n:
        raise ValueError(f"right-hand side has length {d.shape[0]}, expected {inv.n}")
    return inv.matrix @ d
