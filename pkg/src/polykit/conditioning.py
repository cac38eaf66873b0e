"""Condition numbers in the max-norm for the root-based problems.

Every estimator returns a :class:`ConditionEstimate`. The sensitivity of a
vector result ``f`` to complex perturbations of the parameters is the
largest row sum ``max_i sum_k |df_i/dw_k|`` of the Jacobian, normalized as

    kappa = max|w| * max_i sum_k |df_i/dw_k| / max|f|

Problem letters:

``A``  coefficients from roots
``D``  entries of the inverse Vandermonde matrix
``E``  solution of a Vandermonde system ``V(w)^-1 d`` (sensitivity to ``w``)
``F``  values of ``prod (d_j - w_k)`` at data points
``G``  value of an interpolant at one point, sensitivity to nodes and values
``H``  ``d/dx`` of the reduced polynomial at its deleted root

Notation in the code: ``a`` are the coefficients, ``red[i, k]`` the
coefficients of the polynomial with root ``k`` removed, ``den[k]`` that
polynomial's value at ``w[k]`` and ``inv_sum[k] = sum_{l != k} 1/(w[k]-w[l])``.
The dense D and E estimators cost O(n**3) and are meant for moderate n.
"""
from dataclasses import dataclass
from math import comb, log

import numpy as np

from .coeffs import as_roots, fft_coefficients_scaled, iter_reduced, reduced_matrix
from .errors import SingularityError
from .experiments import TestPolySpec
from .fft import unit_roots
from .vandermonde import _denominators

PROBLEMS = ("A", "D", "E", "F", "G", "H")


@dataclass(frozen=True)
class ConditionEstimate:
    kappa: float
    problem: str
    infinite: bool = False
    norm: str = "inf"

    def __float__(self):
        return float(self.kappa)

    @classmethod
    def of(cls, problem, value):
        value = float(value)
        if not np.isfinite(value):
            return cls(float("inf"), problem, True)
        return cls(value, problem, False)


def _value(k):
    return float(k.kappa) if isinstance(k, ConditionEstimate) else float(k)


def _inverse_sums(w):
    diff = w[:, None] - w[None, :]
    np.fill_diagonal(diff, np.inf)
    return np.sum(1.0 / diff, axis=1)


def _quotient(problem, rho, numer, denom):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if denom == 0 or not np.isfinite(denom) or not np.isfinite(numer):
            return ConditionEstimate(float("inf"), problem, True)
        return ConditionEstimate.of(problem, rho * numer / denom)


def kappa_a(roots, coeffs=None, block=256):
    """Condition of the coefficient vector with respect to the roots.

    ``coeffs`` overrides the computed coefficients (e.g. exact ones).
    Reduced coefficients are streamed ``block`` columns at a time.
    """
    w = as_roots(roots)
    n = w.shape[0]
    a = fft_coefficients_scaled(w) if coeffs is None else np.asarray(coeffs, dtype=np.complex128)
    if a.shape[0] != n + 1:
        raise ValueError(f"expected {n + 1} coefficients, got {a.shape[0]}")
    rows = np.zeros(n)
    with np.errstate(over="ignore", invalid="ignore"):
        for _, red in iter_reduced(a, w, block):
            rows += np.sum(np.abs(red), axis=1)
    return _quotient("A", np.max(np.abs(w)), np.max(rows), np.max(np.abs(a)))


def _inverse_parts(params):
    w = as_roots(params)
    den = _denominators(w)
    a = fft_coefficients_scaled(w)
    red = reduced_matrix(a, w)
    return w, red, den, _inverse_sums(w)


def kappa_d(params):
    """Condition of the inverse Vandermonde matrix (all entries)."""
    w, red, den, inv_sum = _inverse_parts(params)
    dist = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(dist, np.inf)
    absred = np.abs(red)
    # off-diagonal: red[i,k] / ((w_j - w_k) den_j); diagonal: -red[i,j] inv_sum_j / den_j
    sens = (absred @ (1.0 / dist) + absred * np.abs(inv_sum)) / np.abs(den)
    entries = absred / np.abs(den)
    return _quotient("D", np.max(np.abs(w)), np.max(sens), np.max(entries))


def kappa_e(d, params):
    """Condition of ``V(params)^-1 @ d`` with respect to ``params``."""
    w, red, den, inv_sum = _inverse_parts(params)
    d = np.asarray(d, dtype=np.complex128).ravel()
    if d.shape[0] != w.shape[0]:
        raise ValueError(f"right-hand side has length {d.shape[0]}, expected {w.shape[0]}")
    q = d / den
    diff = w[:, None] - w[None, :]  # diff[j, k] = w_j - w_k
    np.fill_diagonal(diff, np.inf)
    # dx_i/dw_k = red[i,k] * g_k
    g = np.sum(q[:, None] / diff, axis=0) - inv_sum * q
    x = red @ q
    sens = np.abs(red) @ np.abs(g)
    return _quotient("E", np.max(np.abs(w)), np.max(sens), np.max(np.abs(x)))


def kappa_f(data, roots):
    """Condition of the product-form values at ``data`` with respect to ``roots``."""
    w = as_roots(roots)
    d = np.atleast_1d(np.asarray(data, dtype=np.complex128)).ravel()
    diff = d[:, None] - w[None, :]
    if np.any(diff == 0):
        j, k = map(int, np.argwhere(diff == 0)[0])
        raise SingularityError(f"data point {j} coincides with root {k}")
    with np.errstate(over="ignore", invalid="ignore"):
        p = np.prod(diff, axis=1)
        sens = np.abs(p) * np.sum(1.0 / np.abs(diff), axis=1)
    return _quotient("F", np.max(np.abs(w)), np.max(sens), np.max(np.abs(p)))


def _lagrange_basis(d, x):
    diff = d - x
    if np.any(diff == 0):
        raise SingularityError(f"evaluation point equals node {int(np.flatnonzero(diff == 0)[0])}")
    nd = x[:, None] - x[None, :]
    np.fill_diagonal(nd, 1.0)
    lam = 1.0 / np.prod(nd, axis=1)
    return lam, np.prod(diff) * lam / diff


def interpolant_gradient(d, nodes, values):
    """``(dP(d)/dx, dP(d)/dy, P(d))`` for the interpolant through ``(nodes, values)``."""
    x = np.asarray(nodes, dtype=np.complex128).ravel()
    y = np.asarray(values, dtype=np.complex128).ravel()
    if np.unique(x).shape[0] != x.shape[0]:
        raise SingularityError("duplicate nodes")
    lam, basis = _lagrange_basis(complex(d), x)
    nd = x[:, None] - x[None, :]
    np.fill_diagonal(nd, np.inf)
    # derivative of the interpolant at each node, barycentric form
    slope = np.sum((lam[None, :] / lam[:, None]) * (y[None, :] - y[:, None]) / nd, axis=1)
    return -basis * slope, basis, np.sum(basis * y)


def kappa_g(d, data):
    """Condition of the interpolated value at ``d``.

    Nodes and values are normalized separately, each by its own max-norm,
    which keeps the result invariant under scaling of the nodes.
    """
    x, y = data.nodes, data.values
    dx, dy, pd = interpolant_gradient(d, x, y)
    if pd == 0:
        return ConditionEstimate(float("inf"), "G", True)
    numer = np.max(np.abs(x)) * np.sum(np.abs(dx)) + np.max(np.abs(y)) * np.sum(np.abs(dy))
    return ConditionEstimate.of("G", numer / abs(pd))


def kappa_h(roots):
    """Condition of the derivatives of the reduced polynomials at their deleted roots."""
    w = as_roots(roots)
    den = _denominators(w)
    slope = den * _inverse_sums(w)
    return _quotient("H", np.max(np.abs(w)), np.max(np.abs(slope)), np.max(np.abs(den)))


def composite_bound(k_outer, k_inner):
    """Upper bound ``kappa(f o g) <= kappa(f) * kappa(g)``."""
    return _value(k_outer) * _value(k_inner)


def kappa_c_lower(k_d, k_a):
    """Lower bound for the reduced-coefficient problem: ``kappa_D / kappa_A``."""
    return _value(k_d) / _value(k_a)


def kappa_i_upper(k_a, k_g, k_e):
    """Upper bound for interpolation coefficients: the smallest of the three."""
    return min(_value(k_a), _value(k_g), _value(k_e))


def kappa_a_lower_bound(coeffs, rho):
    """``m' * rho`` where ``m'`` is the degree of the largest coefficient."""
    a = np.abs(np.asarray(coeffs))
    return int(np.argmax(a)) * float(rho)


def kappa_f_bound(data, roots):
    w = as_roots(roots)
    d = np.atleast_1d(np.asarray(data, dtype=np.complex128)).ravel()
    return float(np.max(np.abs(w)) * np.max(np.sum(1.0 / np.abs(d[:, None] - w[None, :]), axis=1)))


def kappa_h_bound(roots):
    w = as_roots(roots)
    dist = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(dist, np.inf)
    return float(np.max(np.abs(w)) * np.max(np.sum(1.0 / dist, axis=1)))


def kappa_a_power_difference(n, rho):
    """Closed form for roots of ``x**n - rho**n``: n when rho >= 1, else n*rho."""
    return float(n) if rho >= 1 else float(n) * rho


def kappa_a_binomial(n, rho):
    """Approximation ``n*rho/(rho+1)`` for the n-fold root ``-rho``."""
    return n * rho / (rho + 1.0)


def _log_max(mags, logscale):
    mags = np.asarray(mags, dtype=float)
    keep = mags > 0
    return float(np.max(np.log(mags[keep]) + logscale[keep]))


def exact_condition_testpoly(spec):
    """Condition of the coefficient problem for a scaled test polynomial.

    The reduced polynomials have closed forms: removing one root ``w`` of
    ``x**p - 1`` (or of ``1 + ... + x**p``) leaves the remaining ``q - 1``
    powers times a quotient with simple coefficients. Work is done at
    ``rho = 1`` and the powers of ``rho`` are applied in log space, so no
    intermediate value overflows.
    """
    if not isinstance(spec, TestPolySpec):
        raise TypeError("expected a TestPolySpec")
    p, q, rho = spec.p, spec.q, float(spec.rho)
    n = p * q
    if spec.family == "p1":
        # coefficient of x**(p*j + p-1-k) in (x^p - 1)^(q-1) * sum_k x^(p-1-k) w^k is b_j w^k
        rows = np.zeros(n)
        for j in range(q):
            rows[p * j : p * j + p] = n * comb(q - 1, j)
        a = np.zeros(n + 1)
        for j in range(q + 1):
            a[p * j] = comb(q, j)
    else:
        base = unit_roots(p + 1)[1:]
        b = np.array([1.0])
        for _ in range(q - 1):
            b = np.convolve(b, np.ones(p + 1))
        rows = np.zeros(n)
        for w in base:
            # (1 + x + ... + x^p) / (x - w) by synthetic division
            e = np.empty(p, dtype=np.complex128)
            e[p - 1] = 1.0
            for i in range(p - 2, -1, -1):
                e[i] = 1.0 + w * e[i + 1]
            rows += q * np.abs(np.convolve(b, e))
        a = np.array([1.0])
        for _ in range(q):
            a = np.convolve(a, np.ones(p + 1))
    logrho = log(rho)
    m = np.arange(n + 1, dtype=float)
    top = _log_max(rows, (n - 1 - m[:n]) * logrho)
    bottom = _log_max(np.abs(a), (n - m) * logrho)
    return ConditionEstimate.of("A", np.exp(logrho + top - bottom))
