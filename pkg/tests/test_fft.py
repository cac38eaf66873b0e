import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_dft
from polykit.fft import FORWARD, INVERSE, dft, plan, plan_for_size, plan_size, unit_roots


@pytest.mark.parametrize("n,size", [(1, 2), (2, 4), (4, 8), (110, 128), (128, 256), (2010, 2048)])
def test_plan_size(n, size):
    assert plan_size(n) == size
    assert plan(n).size == size
    assert n < size <= max(2, 2 * n)


@pytest.mark.parametrize("bad", [0, -3])
def test_plan_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        plan(bad)


def test_plan_for_size_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        plan_for_size(12)


def test_twiddles_have_unit_modulus():
    for size in (2, 4, 64, 4096):
        assert np.max(np.abs(np.abs(plan_for_size(size).twiddles) - 1)) < 1e-15


def test_plan_tables_are_read_only():
    fp = plan(10)
    with pytest.raises(ValueError):
        fp.twiddles[0] = 0


def test_impulse_and_constant():
    fp = plan_for_size(4)
    assert np.allclose(dft(fp, [1, 0, 0, 0]), [1, 1, 1, 1], atol=0)
    assert np.array_equal(dft(fp, [1, 1, 1, 1]), [4, 0, 0, 0])


def test_forward_uses_positive_exponent():
    fp = plan_for_size(8)
    x = np.zeros(8, dtype=complex)
    x[1] = 1
    assert np.max(np.abs(dft(fp, x) - np.exp(2j * np.pi * np.arange(8) / 8))) < 1e-15
    assert np.max(np.abs(dft(fp, x, INVERSE) - np.exp(-2j * np.pi * np.arange(8) / 8))) < 1e-15


def test_length_mismatch():
    with pytest.raises(ValueError):
        dft(plan_for_size(8), np.zeros(7))


def test_bad_direction():
    with pytest.raises(ValueError):
        dft(plan_for_size(8), np.zeros(8), "sideways")


def test_input_not_modified(rng):
    x = rng.normal(size=16) + 0j
    keep = x.copy()
    dft(plan_for_size(16), x)
    assert np.array_equal(x, keep)


@pytest.mark.parametrize("size", [2, 8, 64, 1024])
def test_matches_naive_dft(rng, size):
    x = rng.normal(size=size) + 1j * rng.normal(size=size)
    fp = plan_for_size(size)
    assert np.max(np.abs(dft(fp, x) - naive_dft(x, 1))) < 1e-12 * max(1, np.sqrt(size))
    assert np.max(np.abs(dft(fp, x, INVERSE) - naive_dft(x, -1))) < 1e-12 * max(1, np.sqrt(size))


@pytest.mark.parametrize("size", [2, 8, 64, 1024, 4096])
def test_round_trip(rng, size):
    x = rng.normal(size=size) + 1j * rng.normal(size=size)
    fp = plan_for_size(size)
    back = dft(fp, dft(fp, x, FORWARD), INVERSE) / size
    assert np.max(np.abs(back - x)) / np.max(np.abs(x)) < 1e-13


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 9),
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.integers(0, 2**32 - 1),
)
def test_linearity_and_parseval(log_size, alpha, beta, seed):
    size = 2**log_size
    g = np.random.default_rng(seed)
    x = g.normal(size=size) + 1j * g.normal(size=size)
    y = g.normal(size=size) + 1j * g.normal(size=size)
    fp = plan_for_size(size)
    lhs = dft(fp, alpha * x + beta * y)
    rhs = alpha * dft(fp, x) + beta * dft(fp, y)
    scale = max(1.0, np.max(np.abs(lhs)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale
    fx = dft(fp, x)
    assert abs(np.sum(np.abs(fx) ** 2) - size * np.sum(np.abs(x) ** 2)) <= 1e-12 * size * np.sum(np.abs(x) ** 2)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 12, 110, 1023, 1024])
def test_unit_roots_accurate_and_conjugate_symmetric(m):
    mpmath.mp.prec = 120
    u = unit_roots(m)
    exact = np.array([complex(mpmath.expjpi(mpmath.mpf(2 * k) / m)) for k in range(m)])
    assert np.max(np.abs(u - exact)) <= 2.3e-16
    assert np.array_equal(u[1:], np.conj(u[1:][::-1]))
    assert np.array_equal(unit_roots(m, -1), np.conj(u))


def test_unit_roots_quarter_points_exact():
    u = unit_roots(8)
    assert u[0] == 1 and u[2] == 1j and u[4] == -1 and u[6] == -1j
    assert u[1].real == u[1].imag
