import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial.laguerre import laggauss

from landau_cs.specfun import (
    DegreeTooLarge,
    IndexOutOfRange,
    InvalidInput,
    ScaledValue,
    hermite_array,
    hermite_eval,
    hermite_scaled,
    hermite_sequence,
    laguerre_eval,
    log_factorial_ratio,
    log_laguerre_bound,
)

from oracles import hermite_exact, hermite_rodrigues_coeffs, laguerre_exact, laguerre_exact_complex

finite = st.floats(-8, 8, allow_nan=False)


# ------------------------------------------------------------------ Hermite


@pytest.mark.parametrize(
    "n, xi, expected",
    [
        (2, 1.0, 2.0),
        (0, 17.3, 1.0),
        (3, 0.5, -5.0),  # explicit-sum oracle: 8/8 - 6
    ],
)
def test_hermite_examples(n, xi, expected):
    assert hermite_eval(n, xi) == expected


def test_hermite_sequence_examples():
    assert hermite_sequence(2, 0.0) == [1.0, 0.0, -2.0]
    assert hermite_sequence(0, 5.0) == [1.0]
    assert hermite_sequence(4, 1.0) == [1.0, 2.0, 2.0, -4.0, -20.0]
    assert [float(hermite_exact(n, 1)) for n in range(5)] == [1, 2, 2, -4, -20]


@given(st.integers(0, 60), finite)
def test_sequence_matches_eval_bitwise(n, xi):
    assert hermite_sequence(n, xi)[n] == hermite_eval(n, xi)


@pytest.mark.parametrize("n", range(0, 41, 5))
@pytest.mark.parametrize("xi", [-3.3, -0.7, 0.0, 0.25, 1.9, 4.1])
def test_hermite_matches_exact_sum(n, xi):
    exact = float(hermite_exact(n, Fraction(xi)))
    got = hermite_eval(n, xi)
    assert got == pytest.approx(exact, rel=1e-12, abs=1e-300)


def test_recurrence_residual():
    for xi in np.linspace(-5, 5, 21):
        h = hermite_sequence(51, xi)
        for n in range(1, 51):
            scale = max(abs(h[n + 1]), abs(2 * xi * h[n]), abs(2 * n * h[n - 1]), 1e-300)
            assert abs(h[n + 1] - 2 * xi * h[n] + 2 * n * h[n - 1]) <= 1e-10 * scale


@pytest.mark.parametrize("n", range(9))
def test_rodrigues_cross_check(n):
    coeffs = hermite_rodrigues_coeffs(n)
    for xi in (-1.5, -0.2, 0.0, 0.9, 2.2):
        expected = sum(c * xi**j for j, c in enumerate(coeffs))
        assert hermite_eval(n, xi) == pytest.approx(expected, rel=1e-13, abs=1e-12)


@given(st.integers(0, 80), finite)
def test_parity_exact(n, xi):
    assert hermite_eval(n, -xi) == (-1) ** n * hermite_eval(n, xi)


def test_hermite_errors():
    with pytest.raises(DegreeTooLarge):
        hermite_eval(2001, 0.1)
    with pytest.raises(InvalidInput):
        hermite_eval(3, math.inf)
    with pytest.raises(InvalidInput):
        hermite_sequence(3, math.nan)


@pytest.mark.parametrize("n", [0, 1, 7, 30, 120])
def test_scaled_hermite_matches_direct(n):
    for xi in (-2.5, 0.3, 3.7):
        assert hermite_scaled(n, xi)[n].real() == pytest.approx(hermite_eval(n, xi), rel=1e-12)


def test_scaled_hermite_survives_overflow():
    # H_400(1.5) overflows double precision; its log magnitude does not
    with pytest.raises(OverflowError):
        hermite_eval(400, 1.5)
    sv = hermite_scaled(400, 1.5)[400]
    assert math.isfinite(sv.log_magnitude) and sv.log_magnitude > 709


def test_hermite_array_complex():
    z = np.array([0.3 + 0.4j, -1.1 + 0.2j])
    for n in range(6):
        exact = [complex(sum(c * complex(v) ** j for j, c in enumerate(hermite_rodrigues_coeffs(n)))) for v in z]
        np.testing.assert_allclose(hermite_array(n, z), exact, rtol=1e-13)


# ----------------------------------------------------------------- Laguerre


def test_laguerre_examples():
    assert laguerre_eval(0, 3, 7.2) == 1.0
    for w in (0.0, 0.4, 2.5):
        assert laguerre_eval(1, -1, w) == pytest.approx(-w, abs=1e-15)
        assert float(laguerre_exact(1, -1, Fraction(w))) == pytest.approx(-w)
    assert laguerre_eval(2, 0, 0.0) == 1.0


def test_laguerre_below_range():
    with pytest.raises(IndexOutOfRange):
        laguerre_eval(2, -3, 1.0)


@pytest.mark.parametrize("m, k", [(m, k) for m in range(9) for k in range(-m, 6)])
def test_laguerre_matches_exact_sum(m, k):
    for x in (0.0, 0.3, 1.7, 4.0, 9.5):
        exact = float(laguerre_exact(m, k, Fraction(x)))
        assert laguerre_eval(m, k, x) == pytest.approx(exact, rel=1e-10, abs=1e-10 * max(1.0, abs(exact)))


@given(st.integers(0, 6), st.integers(0, 6), st.complex_numbers(max_magnitude=4))
def test_laguerre_complex_argument(m, k, x):
    assert laguerre_eval(m, k, x) == pytest.approx(laguerre_exact_complex(m, k, x), rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("k", range(0, 4))
def test_laguerre_orthogonality(k):
    x, w = laggauss(30)
    for m in range(7):
        for mp_ in range(7):
            val = np.sum(w * x**k * np.array([laguerre_eval(m, k, xi) * laguerre_eval(mp_, k, xi) for xi in x]))
            expected = math.factorial(k + m) / math.factorial(m) if m == mp_ else 0.0
            assert val == pytest.approx(expected, rel=1e-8, abs=1e-8 * max(1.0, expected))


# ---------------------------------------------------------- factorial ratio


def test_log_factorial_ratio_examples():
    assert log_factorial_ratio(5, 5) == 0.0
    assert log_factorial_ratio(3, 0) == pytest.approx(math.log(6), rel=1e-14)
    assert log_factorial_ratio(170, 168) == pytest.approx(math.log(170 * 169), rel=1e-14)


@given(st.integers(0, 400), st.integers(0, 400))
def test_log_factorial_ratio_exact(p, q):
    hi, lo = max(p, q), min(p, q)
    exact = math.log(math.factorial(hi) // math.factorial(lo))
    got = log_factorial_ratio(hi, lo)
    assert got == pytest.approx(exact, rel=1e-14, abs=1e-15)
    assert log_factorial_ratio(lo, hi) == -got


# ------------------------------------------------------------- ScaledValue


@given(st.complex_numbers(min_magnitude=1e-200, max_magnitude=1e200, allow_nan=False, allow_infinity=False))
def test_scaled_value_round_trip(v):
    assert ScaledValue.from_value(v).value() == pytest.approx(v, rel=1e-12)


def test_scaled_value_zero_and_products():
    z = ScaledValue.from_value(0.0)
    assert z.is_zero and z.value() == 0
    a = ScaledValue(800.0, -1.0)
    b = ScaledValue(-795.0, 1j)
    assert (a * b).value() == pytest.approx(-1j * math.exp(5.0), rel=1e-12)
    assert (a / ScaledValue(799.0)).value() == pytest.approx(-math.e, rel=1e-12)


@given(st.integers(0, 8), st.integers(0, 60), st.floats(0, 40))
def test_laguerre_bound_dominates(m, k, w):
    assert abs(laguerre_eval(m, k, w)) <= math.exp(log_laguerre_bound(m, k, w)) * (1 + 1e-12)


def test_laguerre_bound_tight_at_zero():
    assert log_laguerre_bound(3, 4, 0.0) == pytest.approx(math.log(laguerre_eval(3, 4, 0.0)), rel=1e-14)
    with pytest.raises(InvalidInput):
        log_laguerre_bound(2, -1, 1.0)
