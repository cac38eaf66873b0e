"""Lagrange interpolation and coefficients of interpolation polynomials.

Two routes to the coefficients of the degree-n polynomial through n+1
points:

* :func:`coefficients_fft` evaluates the barycentric interpolant at the
  ``N``-th unit roots (``N`` the power of two above ``n``) and transforms.
  All ``N`` points are used, not just ``n`` of them, so the transform
  reproduces every coefficient of a degree-n polynomial exactly.
* :func:`coefficients_vandermonde` multiplies the values by the inverse
  Vandermonde matrix of the nodes.

An interpolation point that equals a node exactly returns the node's value;
near coincidences go through the barycentric formula unchanged.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import PolynomialOverflowError, SingularityError
from .fft import FORWARD, dft, plan
from .vandermonde import invert


@dataclass(frozen=True, eq=False)
class DataSet:
    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.ascontiguousarray(np.asarray(self.nodes, dtype=np.complex128).ravel())
        y = np.ascontiguousarray(np.asarray(self.values, dtype=np.complex128).ravel())
        if x.shape != y.shape:
            raise ValueError(f"{x.shape[0]} nodes but {y.shape[0]} values")
        if x.shape[0] < 1:
            raise ValueError("at least one data point is required")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("nodes and values must be finite")
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "values", y)

    @property
    def degree(self):
        return self.nodes.shape[0] - 1


def _as_data(data, values=None):
    if isinstance(data, DataSet):
        return data
    return DataSet(data, values)


def node_denominators(nodes):
    """``prod_{i != j} (x[j] - x[i])`` for every node; raises on duplicates."""
    x = np.ascontiguousarray(np.asarray(nodes, dtype=np.complex128))
    d = _kernels.node_products(x)
    zero = np.flatnonzero(d == 0)
    if zero.size:
        j = int(zero[0])
        same = np.flatnonzero(x == x[j])
        if same.size > 1:
            raise SingularityError(f"duplicate nodes: {same.tolist()}")
        raise PolynomialOverflowError(
            f"node product for node {j} underflows", step="denominators", index=j
        )
    bad = np.flatnonzero(~np.isfinite(d))
    if bad.size:
        raise PolynomialOverflowError(
            f"node product for node {int(bad[0])} overflows", step="denominators", index=int(bad[0])
        )
    return d


def barycentric_weights(data, values=None):
    """``w[j] = y[j] / prod_{i != j} (x[j] - x[i])``."""
    data = _as_data(data, values)
    return data.values / node_denominators(data.nodes)


def eval_lagrange(data, weights, d):
    """Interpolant at ``d`` as ``prod_i (d - x[i]) * sum_k w[k] / (d - x[k])``."""
    data = _as_data(data)
    pts = np.ascontiguousarray(np.atleast_1d(np.asarray(d, dtype=np.complex128)).ravel())
    w = np.ascontiguousarray(np.asarray(weights, dtype=np.complex128))
    out = _interpolate(data.nodes, data.values, w, pts)
    return out[0] if np.ndim(d) == 0 else out.reshape(np.shape(d))


def _interpolate(x, y, w, pts):
    with np.errstate(over="ignore", invalid="ignore"):
        s, hit = _kernels.cauchy_sum(pts, x, w)
        out = _kernels.products(pts, x) * s
    on_node = hit >= 0
    out[on_node] = y[hit[on_node]]
    return out


def coefficients_fft(data, values=None):
    """Coefficients ``a[0..n]`` via interpolation at unit roots and one FFT."""
    data = _as_data(data, values)
    n = data.degree
    if n == 0:
        return data.values.copy()
    w = barycentric_weights(data)
    fp = plan(n)
    z = fp.unit_roots(sign=-1)
    p = _interpolate(data.nodes, data.values, np.ascontiguousarray(w), z)
    if not np.all(np.isfinite(p)):
        j = int(np.flatnonzero(~np.isfinite(p))[0])
        raise PolynomialOverflowError(
            f"interpolated value at unit root index {j} is not finite",
            step="interpolation", index=j,
        )
    a = dft(fp, p, FORWARD) / fp.size
    return a[: n + 1].copy()


def coefficients_vandermonde(data, values=None, inverter="pt+"):
    """Coefficients as ``V(x)^-1 @ y`` with the chosen inversion method."""
    data = _as_data(data, values)
    inv = invert(data.nodes, inverter)
    return inv.matrix @ data.values


METHODS = {"ga": coefficients_fft, "de": coefficients_vandermonde}


def interpolation_coefficients(data, values=None, method="ga", **kwargs):
    try:
        fn = METHODS[method.lower()]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; use 'ga' or 'de'") from None
    return fn(_as_data(data, values), **kwargs)
