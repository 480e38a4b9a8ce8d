import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from landau_cs.quadrature import (
    InvalidOrder,
    gauss_hermite_rule,
    polar_rule,
    tensor_rule,
)

from oracles import gaussian_moment

SQRT_PI = math.sqrt(math.pi)


def test_order_one():
    g = gauss_hermite_rule(1)
    assert g.nodes[0] == 0.0
    assert g.weights[0] == pytest.approx(SQRT_PI, rel=1e-15)


def test_order_two():
    g = gauss_hermite_rule(2)
    np.testing.assert_allclose(np.sort(g.nodes), [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(g.weights, [SQRT_PI / 2] * 2, rtol=1e-15)


@pytest.mark.parametrize("order", [1, 2, 5, 12, 20, 40])
def test_moment_exactness(order):
    g = gauss_hermite_rule(order)
    for j in range(2 * order):
        exact = float(gaussian_moment(j))
        got = g.integrate(g.nodes**j)
        scale = g.integrate(np.abs(g.nodes) ** j)
        assert abs(got - exact) <= 1e-12 * max(scale, 1.0)


def test_x38_at_order_20():
    g = gauss_hermite_rule(20)
    assert g.integrate(g.nodes**38) == pytest.approx(2.7724322986333716e16, rel=1e-12)


@given(st.integers(1, 256))
def test_rule_symmetric_and_positive(order):
    g = gauss_hermite_rule(order)
    np.testing.assert_array_equal(g.nodes, -g.nodes[::-1])
    np.testing.assert_array_equal(g.weights, g.weights[::-1])
    assert np.all(g.weights > 0) and len(g) == order


@pytest.mark.parametrize("order", [0, -3, 257])
def test_invalid_order(order):
    with pytest.raises(InvalidOrder):
        gauss_hermite_rule(order)


def test_rules_are_immutable():
    g = gauss_hermite_rule(6)
    with pytest.raises(ValueError):
        g.nodes[0] = 1.0
    with pytest.raises(Exception):
        g.order = 7


def test_raw_weights_integrate_plain_gaussian():
    g = gauss_hermite_rule(40)
    # int e^{-x^2/2} dx = sqrt(2 pi)
    assert np.sum(g.raw_weights * np.exp(-g.nodes**2 / 2)) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12)


def test_tensor_rule_gaussian():
    t = tensor_rule(30, scale=2.0)
    x, y = t.nodes[:, 0], t.nodes[:, 1]
    assert t.integrate(np.exp(-(x**2 + y**2) / 4)) == pytest.approx(4 * math.pi, rel=1e-12)


@pytest.mark.parametrize("beta", [0.5, 1.0, 3.0])
def test_polar_rule_moments(beta):
    pr = polar_rule(beta, 20, 16)
    x, y = pr.nodes[:, 0], pr.nodes[:, 1]
    r2 = x**2 + y**2
    g = np.exp(-beta * r2 / 2)
    assert pr.integrate(g) == pytest.approx(2 * math.pi / beta, rel=1e-13)
    # int r^4 e^{-beta r^2/2} = 2 pi * 8 / beta^3
    assert pr.integrate(r2**2 * g) == pytest.approx(16 * math.pi / beta**3, rel=1e-12)
    # odd angular modes vanish
    assert abs(pr.integrate(x * y**2 * g)) < 1e-13


def test_polar_rule_validation():
    with pytest.raises(ValueError):
        polar_rule(0.0, 10, 10)
    with pytest.raises(InvalidOrder):
        polar_rule(1.0, 0, 10)
    with pytest.raises(InvalidOrder):
        polar_rule(1.0, 10, 0)
