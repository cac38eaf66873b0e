"""Accuracy experiments: exact test polynomials, random samplers and runners.

Test polynomials (``rho`` scales every root):

``p1``  ``(x**p - 1)**q``: the p-th unit roots, each q times
``p2``  ``(1 + x + ... + x**p)**q``: the (p+1)-th unit roots except 1, each q times

Random families, with ``delta`` i.i.d. uniform on [0, 1) and k = 0, 1, ...:

``circle``   ``rho * exp(2j*pi*(k + delta)/n)``
``disk``     ``delta' * rho * exp(2j*pi*(k + delta)/n)``
``annulus``  ``(1 - width*delta') * rho * exp(2j*pi*(k + delta)/n)``
``line``     ``rho * (-1 + 2*(k + delta)/n)`` (data additionally shifted by ``shift``)

The radial draw ``delta'`` is independent of the angular one. Data sets have
n+1 points with the same divisor n.

Errors follow ``eps2 = ||phi - f|| * ||x|| / ||f||`` with plain
(unscaled) Euclidean norms, so norms whose squares leave the binary64
range give NaN, which is recorded rather than raised. The runners drop the
``||x||`` factor unless ``include_x_norm=True``, reporting plain relative
errors.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import comb, sqrt
from typing import NamedTuple

import numpy as np

from .coeffs import (
    eval_horner,
    eval_product,
    fft_coefficients_scaled,
    get_solver,
)
from .errors import PolykitError
from .fft import unit_roots
from .interpolation import DataSet, coefficients_fft, coefficients_vandermonde

TEST_FAMILIES = ("p1", "p2")
SAMPLE_FAMILIES = ("circle", "disk", "annulus", "line")
MAX_RESAMPLE = 20


@dataclass(frozen=True)
class TestPolySpec:
    __test__ = False  # keep pytest from collecting this class

    family: str
    p: int
    q: int = 1
    rho: float = 1.0

    def __post_init__(self):
        if self.family not in TEST_FAMILIES:
            raise ValueError(f"family must be one of {TEST_FAMILIES}, got {self.family!r}")
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")
        if not self.rho > 0:
            raise ValueError("rho must be positive")

    @property
    def degree(self):
        return self.p * self.q

    def roots(self):
        if self.family == "p1":
            base = unit_roots(self.p)
        else:
            base = unit_roots(self.p + 1)[1:]
        return self.rho * np.tile(base, self.q)


class TestPolynomial(NamedTuple):
    __test__ = False

    roots: np.ndarray
    coeffs: np.ndarray
    overflow: bool


def _integer_coefficients(spec):
    n = spec.degree
    c = [0] * (n + 1)
    if spec.family == "p1":
        for k in range(spec.q + 1):
            c[spec.p * k] = (-1) ** (spec.q - k) * comb(spec.q, k)
    else:
        c = [1]
        for _ in range(spec.q):
            nxt = [0] * (len(c) + spec.p)
            for i, ci in enumerate(c):
                for j in range(spec.p + 1):
                    nxt[i + j] += ci
            c = nxt
    return c


def _scaled_to_float(c, rho, power):
    """Correctly rounded ``c * rho**power`` with ``rho`` an exact binary64 value."""
    if c == 0:
        return 0.0, False
    num, den = rho.as_integer_ratio()
    try:
        return (c * num**power) / den**power, False
    except OverflowError:
        return (np.inf if c > 0 else -np.inf), True


def gen_testpoly_exact(spec):
    """Roots and exactly rounded coefficients of a scaled test polynomial.

    Coefficients are integers from the binomial theorem (or repeated
    convolution for ``p2``), scaled by ``rho**(n-m)`` in exact arithmetic and
    rounded once. Coefficients beyond the binary64 range become infinite and
    set ``overflow``.
    """
    n = spec.degree
    ints = _integer_coefficients(spec)
    rho = float(spec.rho)
    out = np.zeros(n + 1, dtype=np.complex128)
    overflow = False
    for m, c in enumerate(ints):
        out[m], hit = _scaled_to_float(c, rho, n - m)
        overflow |= hit
    return TestPolynomial(spec.roots(), out, overflow)


@dataclass(frozen=True)
class SampleSpec:
    family: str
    rho: float
    n: int
    seed: int = 0
    width: float = 0.1
    shift: float = 0.0
    samples: int | None = None

    def __post_init__(self):
        if self.family not in SAMPLE_FAMILIES:
            raise ValueError(f"family must be one of {SAMPLE_FAMILIES}, got {self.family!r}")
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        if not 0 <= self.width < 1:
            raise ValueError("width must lie in [0, 1)")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be positive")

    @property
    def sample_count(self):
        if self.samples is not None:
            return self.samples
        return 100 if self.n < 255 else 10


def sample_rng(seed, sample_index, stream, attempt=0):
    """Independent generator per (seed, sample, stream, attempt)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(sample_index), int(stream), int(attempt)))
    return np.random.default_rng(ss)


def sample_points(family, count, n, rho, width=0.1, rng=None, delta=None):
    """``count`` points of ``family``; ``delta`` overrides every random draw."""
    k = np.arange(count, dtype=float)

    def draw():
        if delta is not None:
            return np.full(count, float(delta))
        return rng.random(count)

    if family == "line":
        return rho * (-1.0 + 2.0 * (k + draw()) / n) + 0j
    angle = np.exp(2j * np.pi * (k + draw()) / n)
    if family == "circle":
        return rho * angle
    if family == "disk":
        return draw() * rho * angle
    if family == "annulus":
        return (1.0 - width * draw()) * rho * angle
    raise ValueError(f"unknown family {family!r}")


def sample_roots(spec, sample_index, delta=None):
    rng = sample_rng(spec.seed, sample_index, 0)
    return sample_points(spec.family, spec.n, spec.n, spec.rho, spec.width, rng, delta)


def sample_data(spec, sample_index, attempt=0, delta=None):
    """n+1 data points; line data are shifted by ``spec.shift``."""
    rng = sample_rng(spec.seed, sample_index, 1, attempt)
    pts = sample_points(spec.family, spec.n + 1, spec.n, spec.rho, spec.width, rng, delta)
    if spec.family == "line":
        pts = pts + spec.shift
    return pts


def _plain_norm(v):
    v = np.asarray(v)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        return float(np.sqrt(np.sum(np.abs(v) ** 2)))


def eps2(phi, f, x, include_x_norm=True):
    """Relative error ``||phi - f|| * ||x|| / ||f||``; NaN when undefined."""
    phi = np.asarray(phi, dtype=np.complex128)
    f = np.asarray(f, dtype=np.complex128)
    if phi.shape != f.shape:
        raise ValueError(f"shape mismatch: {phi.shape} vs {f.shape}")
    with np.errstate(over="ignore", invalid="ignore"):
        num = _plain_norm(phi - f)
    den = _plain_norm(f)
    scale = _plain_norm(x) if include_x_norm else 1.0
    if not (np.isfinite(num) and np.isfinite(den) and np.isfinite(scale)) or den == 0.0:
        return float("nan")
    return num * scale / den


@dataclass
class ErrorStats:
    eps2: list = field(default_factory=list)
    eps0: float = float("nan")
    nan_count: int = 0
    overflow: bool = False

    @property
    def samples(self):
        return len(self.eps2)

    @classmethod
    def from_samples(cls, values):
        values = [float(v) for v in values]
        kept = [v for v in values if not np.isnan(v)]
        nan_count = len(values) - len(kept)
        if kept:
            total = 0.0
            for v in kept:
                total += v * v
            eps0 = sqrt(total / len(kept))
        else:
            eps0 = float("nan")
        overflow = nan_count > 0 or any(np.isinf(v) for v in kept)
        return cls(values, eps0, nan_count, overflow)


def solver_for(name, rho):
    """Coefficient solver by key; ``p-scaled`` uses ``sigma = 1/rho`` for ``rho < 1``."""
    key = name.lower().replace("_", "-")
    if key in ("p-scaled", "ps", "p-s"):
        sigma = 1.0 / rho if rho < 1 else 1.0
        return partial(fft_coefficients_scaled, sigma=sigma)
    return get_solver(key)


def _safe(fn):
    # numerical failures are recorded as NaN, never raised
    try:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return fn()
    except (PolykitError, ArithmeticError):
        return float("nan")


def _run(task, count, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(task, range(count)))
    return [task(i) for i in range(count)]


def run_problem_a(spec, solver="p", include_x_norm=False):
    """Single deterministic run against the exact test-polynomial coefficients."""
    tp = gen_testpoly_exact(spec)
    solve = solver_for(solver, spec.rho)

    def one():
        with np.errstate(over="ignore", invalid="ignore"):
            return eps2(solve(tp.roots), tp.coeffs, tp.roots, include_x_norm)

    return ErrorStats.from_samples([_safe(one)])


def run_problem_f(spec, solver="p", include_x_norm=False, threads=1):
    """Product form vs coefficient form at n+1 random data points."""
    solve = solver_for(solver, spec.rho)

    def task(i):
        roots = sample_roots(spec, i)
        data = sample_data(spec, i)

        def one():
            y = eval_product(roots, data)
            z = eval_horner(solve(roots), data)
            return eps2(z, y, roots, include_x_norm)

        return _safe(one)

    return ErrorStats.from_samples(_run(task, spec.sample_count, threads))


def run_problem_h(spec, solver="p", include_x_norm=False, threads=1):
    """Coefficient form evaluated at the roots and at the origin."""
    solve = solver_for(solver, spec.rho)

    def task(i):
        roots = sample_roots(spec, i)

        def one():
            a = solve(roots)
            phi = eval_horner(a, np.append(roots, 0.0))
            f = np.zeros(roots.shape[0] + 1, dtype=np.complex128)
            f[-1] = eval_product(roots, 0.0)
            return eps2(phi, f, roots, include_x_norm)

        return _safe(one)

    return ErrorStats.from_samples(_run(task, spec.sample_count, threads))


def _distinct_nodes(spec, i, need_nonzero):
    for attempt in range(MAX_RESAMPLE):
        x = sample_data(spec, i, attempt)
        if np.unique(x).shape[0] == x.shape[0] and not (need_nonzero and np.any(x == 0)):
            return x
    raise RuntimeError(f"could not draw distinct nodes for sample {i}")


def run_problem_i(spec, method="ga", include_x_norm=False, threads=1, inverter="pt+"):
    """Interpolation coefficients vs the (scaled) FFT coefficients of the roots."""
    method = method.lower()
    if method not in ("ga", "de"):
        raise ValueError(f"method must be 'ga' or 'de', got {method!r}")
    reference = solver_for("p-scaled", spec.rho)

    def task(i):
        roots = sample_roots(spec, i)
        nodes = _distinct_nodes(spec, i, need_nonzero=method == "de")

        def one():
            y = eval_product(roots, nodes)
            if not np.all(np.isfinite(y)):
                return float("nan")
            data = DataSet(nodes, y)
            if method == "ga":
                cand = coefficients_fft(data)
            else:
                cand = coefficients_vandermonde(data, inverter=inverter)
            return eps2(cand, reference(roots), roots, include_x_norm)

        return _safe(one)

    return ErrorStats.from_samples(_run(task, spec.sample_count, threads))
