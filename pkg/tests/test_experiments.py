from math import comb, sqrt

import numpy as np
import pytest

import oracles as orc
from polykit.coeffs import eval_horner
from polykit.experiments import (
    ErrorStats,
    SampleSpec,
    TestPolySpec,
    eps2,
    gen_testpoly_exact,
    run_problem_a,
    run_problem_f,
    run_problem_h,
    run_problem_i,
    sample_data,
    sample_roots,
    solver_for,
)
from polykit.fft import unit_roots


def test_testpoly_examples():
    assert np.array_equal(gen_testpoly_exact(TestPolySpec("p1", 4)).coeffs, [-1, 0, 0, 0, 1])
    assert np.array_equal(gen_testpoly_exact(TestPolySpec("p2", 2, 2)).coeffs, [1, 2, 3, 2, 1])
    row = [(-1) ** (10 - k) * comb(10, k) for k in range(11)]
    assert np.array_equal(gen_testpoly_exact(TestPolySpec("p1", 1, 10)).coeffs, row)


def test_testpoly_roots():
    tp = gen_testpoly_exact(TestPolySpec("p2", 3, 2, 0.5))
    assert tp.roots.shape == (6,)
    assert np.allclose(tp.roots[:3], 0.5 * unit_roots(4)[1:], atol=1e-16)
    assert np.array_equal(tp.roots[:3], tp.roots[3:])


@pytest.mark.parametrize("family,p,q,rho", [("p1", 3, 2, 0.75), ("p2", 3, 2, 1.25), ("p1", 5, 1, 0.1)])
def test_testpoly_matches_root_product(family, p, q, rho):
    tp = gen_testpoly_exact(TestPolySpec(family, p, q, rho))
    exact = orc.poly_from_roots(tp.roots)
    assert orc.rel_error(tp.coeffs, exact) < 1e-14


def test_testpoly_scaling_is_rounded_once():
    # rho**6 * 1 for p1 p=6, rho = 0.1: a single correctly rounded product
    from fractions import Fraction

    c = gen_testpoly_exact(TestPolySpec("p1", 6, 1, 0.1)).coeffs[0]
    assert c.real == -float(Fraction(0.1) ** 6)


def test_testpoly_overflow_flag():
    tp = gen_testpoly_exact(TestPolySpec("p1", 2000, 1, 1.5))
    assert tp.overflow and np.isinf(tp.coeffs[0].real)
    assert not gen_testpoly_exact(TestPolySpec("p1", 100, 1, 1.5)).overflow


def test_spec_validation():
    with pytest.raises(ValueError):
        TestPolySpec("p3", 2)
    with pytest.raises(ValueError):
        TestPolySpec("p1", 0)
    with pytest.raises(ValueError):
        TestPolySpec("p1", 2, rho=0)
    with pytest.raises(ValueError):
        SampleSpec("sphere", 1.0, 10)
    with pytest.raises(ValueError):
        SampleSpec("annulus", 1.0, 10, width=1.0)
    with pytest.raises(ValueError):
        SampleSpec("circle", 1.0, 10, samples=0)


def test_sample_counts():
    assert SampleSpec("circle", 1.0, 254).sample_count == 100
    assert SampleSpec("circle", 1.0, 255).sample_count == 10
    assert SampleSpec("circle", 1.0, 255, samples=3).sample_count == 3


def test_sampler_degenerate_delta():
    spec = SampleSpec("circle", 2.0, 16)
    got = sample_roots(spec, 0, delta=0.0)
    assert np.allclose(got, 2.0 * unit_roots(16), atol=1e-15)


def test_sampler_families(rng):
    n = 50
    line = sample_roots(SampleSpec("line", 1.0, n), 3)
    assert np.all(line.imag == 0)
    assert np.all(line.real >= -1) and np.all(line.real < 1 + 2 / n)
    disk = sample_roots(SampleSpec("disk", 2.0, n), 0)
    assert np.all(np.abs(disk) <= 2.0)
    ann = sample_roots(SampleSpec("annulus", 1.0, n, width=0.1), 0)
    assert np.all(np.abs(ann) > 0.9 - 1e-15) and np.all(np.abs(ann) <= 1 + 1e-15)
    circ = sample_roots(SampleSpec("circle", 0.5, n), 0)
    assert np.allclose(np.abs(circ), 0.5, rtol=1e-15)


def test_sampler_determinism():
    spec = SampleSpec("annulus", 1.0, 30, seed=7)
    assert np.array_equal(sample_roots(spec, 4), sample_roots(spec, 4))
    assert not np.array_equal(sample_roots(spec, 4), sample_roots(spec, 5))
    assert not np.array_equal(sample_roots(spec, 4), sample_roots(SampleSpec("annulus", 1.0, 30, seed=8), 4))


def test_data_independent_of_roots():
    spec = SampleSpec("circle", 1.0, 20)
    d = sample_data(spec, 0)
    assert d.shape == (21,)
    assert not np.allclose(d[:20], sample_roots(spec, 0))


def test_line_data_shift():
    a = sample_data(SampleSpec("line", 1.0, 10), 0)
    b = sample_data(SampleSpec("line", 1.0, 10, shift=0.25), 0)
    assert np.array_equal(b, a + 0.25)


def test_eps2_examples():
    assert eps2([1, 2], [1, 2], [1, 1]) == 0
    assert eps2([2], [1], [1], include_x_norm=True) == 1
    assert eps2([2], [1], [3], include_x_norm=True) == 3
    assert eps2([2], [1], [3], include_x_norm=False) == 1


def test_eps2_nan_semantics():
    assert np.isnan(eps2([1], [0], [1]))
    assert np.isnan(eps2([1e200], [1e200], [1]))
    assert np.isnan(eps2([np.inf], [1], [1]))
    with pytest.raises(ValueError):
        eps2([1, 2], [1], [1])


def test_error_stats_aggregation():
    s = ErrorStats.from_samples([3.0, float("nan"), 4.0])
    assert s.samples == 3 and s.nan_count == 1 and s.overflow
    assert s.eps0 == sqrt(12.5)
    assert s.eps0**2 * 2 == pytest.approx(9 + 16, rel=1e-15)
    empty = ErrorStats.from_samples([float("nan")])
    assert np.isnan(empty.eps0)
    clean = ErrorStats.from_samples([1e-15, 2e-15])
    assert not clean.overflow and clean.nan_count == 0


def test_solver_lookup():
    assert solver_for("p", 1.0)(np.array([1, -1], dtype=complex))[0] == -1
    assert solver_for("p-scaled", 0.5).keywords["sigma"] == 2.0
    assert solver_for("p-scaled", 2.0).keywords["sigma"] == 1.0
    with pytest.raises(ValueError):
        solver_for("q", 1.0)


def test_problem_a_small_all_solvers():
    spec = TestPolySpec("p1", 10)
    for solver in ("p", "p-scaled", "r", "r+"):
        assert run_problem_a(spec, solver).eps0 < 1e-14


def test_problem_a_algorithm_p_window():
    e = run_problem_a(TestPolySpec("p1", 110), "p").eps0
    assert 2.8e-16 <= e <= 2.8e-13


def test_problem_a_nan_is_recorded():
    s = run_problem_a(TestPolySpec("p1", 910, 1, 1.5), "p")
    assert s.nan_count == 1 and np.isnan(s.eps0)


def test_problem_a_x_norm_factor():
    spec = TestPolySpec("p1", 30)
    plain = run_problem_a(spec, "p").eps0
    with_x = run_problem_a(spec, "p", include_x_norm=True).eps0
    assert with_x == pytest.approx(plain * sqrt(30), rel=1e-12)


def test_plain_recursion_degrades_monotonically():
    errs = [run_problem_a(TestPolySpec("p1", n), "r").eps0 for n in (10, 30, 50, 70)]
    for a, b in zip(errs, errs[1:]):
        assert b >= 10 * a


@pytest.mark.parametrize("rho", [0.5, 0.1])
def test_scaling_benefit(rho):
    spec = TestPolySpec("p1", 110, 1, rho)
    assert run_problem_a(spec, "p-scaled").eps0 <= run_problem_a(spec, "p").eps0 / 5


def test_problem_f_circle():
    s = run_problem_f(SampleSpec("circle", 1.0, 110, samples=20), "p")
    assert s.samples == 20 and s.nan_count == 0
    assert s.eps0 < 1e-12


def test_problem_f_line_small_radius():
    # unscaled coefficients of a tiny real cluster lose everything
    s = run_problem_f(SampleSpec("line", 0.1, 20), "p")
    assert s.nan_count > 0 or s.eps0 > 1
    assert run_problem_f(SampleSpec("line", 0.1, 20), "p-scaled").eps0 < 1e-10


def test_parallel_matches_serial():
    spec = SampleSpec("annulus", 1.0, 40, seed=3, samples=12)
    serial = run_problem_f(spec, "p")
    parallel = run_problem_f(spec, "p", threads=2)
    assert serial.eps2 == parallel.eps2
    assert run_problem_i(spec, "ga").eps2 == run_problem_i(spec, "ga", threads=3).eps2


def test_runs_are_bit_reproducible():
    spec = SampleSpec("disk", 0.5, 25, seed=11, samples=5)
    assert run_problem_h(spec, "r+") == run_problem_h(spec, "r+")


def test_problem_h_exact_coefficients_sanity(monkeypatch):
    import polykit.experiments as ex

    def exact_solver(name, rho):
        return lambda w: orc.to_array(orc.poly_from_roots(w))

    monkeypatch.setattr(ex, "solver_for", exact_solver)
    s = ex.run_problem_h(SampleSpec("circle", 1.0, 16, samples=5), "p")
    assert s.eps0 < 1e-11


def test_problem_h_circle_vs_disk():
    assert run_problem_h(SampleSpec("circle", 1.0, 110, samples=10), "p").eps0 < 1e-11
    disk = run_problem_h(SampleSpec("disk", 1.0, 40, samples=10), "p")
    assert disk.nan_count > 0 or disk.eps0 >= 1e-1


def test_problem_i_line():
    assert run_problem_i(SampleSpec("line", 1.0, 100, samples=10), "ga").eps0 < 1e-13


def test_problem_i_methods():
    spec = SampleSpec("annulus", 1.0, 60, samples=5)
    assert run_problem_i(spec, "ga").eps0 < 1e-12
    assert run_problem_i(spec, "de").eps0 < 1e-11
    with pytest.raises(ValueError):
        run_problem_i(spec, "lu")


def test_problem_i_reference_is_what_it_claims(rng):
    # the runner compares against the coefficients of the sampled roots
    spec = SampleSpec("circle", 1.0, 8, samples=1)
    roots = sample_roots(spec, 0)
    exact = orc.to_array(orc.poly_from_roots(roots))
    nodes = sample_data(spec, 0)
    assert np.max(np.abs(eval_horner(exact, nodes) - np.prod(nodes[:, None] - roots, axis=1))) < 1e-12
    assert run_problem_i(spec, "ga").eps0 < 1e-13
