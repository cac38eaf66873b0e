"""Exact reference computations in rational complex arithmetic.

Binary64 inputs are converted to Fractions without rounding, so every
result here is the exact answer for the given floating point data.
"""
from fractions import Fraction
from itertools import combinations

import numpy as np


def q(z):
    z = complex(z)
    return (Fraction(z.real), Fraction(z.imag))


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def div(u, v):
    den = v[0] * v[0] + v[1] * v[1]
    return ((u[0] * v[0] + u[1] * v[1]) / den, (u[1] * v[0] - u[0] * v[1]) / den)


ZERO = (Fraction(0), Fraction(0))
ONE = (Fraction(1), Fraction(0))


def to_complex(u):
    return complex(float(u[0]), float(u[1]))


def to_array(vec):
    return np.array([to_complex(u) for u in vec])


def poly_mul_linear(c, r):
    """Coefficients of ``c(x) * (x - r)``, ascending."""
    out = [ZERO] * (len(c) + 1)
    for m, cm in enumerate(c):
        out[m + 1] = add(out[m + 1], cm)
        out[m] = sub(out[m], mul(cm, r))
    return out


def poly_from_roots(roots):
    c = [ONE]
    for r in roots:
        c = poly_mul_linear(c, q(r))
    return c


def elementary_symmetric(roots):
    """Sum over all m-subsets of the products, m = 1..n (brute force)."""
    qs = [q(r) for r in roots]
    out = []
    for m in range(1, len(qs) + 1):
        s = ZERO
        for sub_ in combinations(qs, m):
            p = ONE
            for v in sub_:
                p = mul(p, v)
            s = add(s, p)
        out.append(s)
    return out


def interpolation_coefficients(x, y):
    """Coefficients of the degree-n polynomial through n+1 points."""
    xs = [q(v) for v in x]
    ys = [q(v) for v in y]
    n1 = len(xs)
    total = [ZERO] * n1
    for j in range(n1):
        basis = [ONE]
        den = ONE
        for i in range(n1):
            if i != j:
                basis = poly_mul_linear(basis, xs[i])
                den = mul(den, sub(xs[j], xs[i]))
        scale = div(ys[j], den)
        for m in range(n1):
            total[m] = add(total[m], mul(basis[m], scale))
    return total


def rel_error(approx, exact):
    """``max|approx - exact| / max|exact|`` with the difference taken exactly."""
    diffs = [sub(q(a), e) for a, e in zip(approx, exact)]
    num = max(float(d[0] * d[0] + d[1] * d[1]) for d in diffs) ** 0.5
    den = max(float(e[0] * e[0] + e[1] * e[1]) for e in exact) ** 0.5
    return num / den


def naive_dft(x, sign=1):
    n = len(x)
    k = np.arange(n)
    kernel = np.exp(sign * 2j * np.pi * ((np.outer(k, k)) % n) / n)
    return kernel @ np.asarray(x)


def circle_points(rng, n, radius=1.0):
    return radius * np.exp(2j * np.pi * rng.random(n))


def jittered_circle(rng, n, radius=1.0):
    """One point per arc ``[2*pi*k/n, 2*pi*(k+1)/n)``: well separated, still random."""
    return radius * np.exp(2j * np.pi * (np.arange(n) + rng.random(n)) / n)
