"""Immutable quadrature rules on the line and the plane."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.laguerre import laggauss

GH_ORDER_CAP = 256
LAGUERRE_ORDER_CAP = 160

RuleKind = Literal["gauss-hermite-1d", "tensor-2d", "polar-2d"]


class InvalidOrder(ValueError):
    pass


class InsufficientQuadratureOrder(ValueError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights.

    For ``gauss-hermite-1d`` the weights carry the ``e^{-x^2}`` weight function:
    ``sum(w * f(x)) ~ int f(x) e^{-x^2} dx``. The 2-D kinds integrate raw
    functions against ``dx dy``.
    """

    kind: RuleKind
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights differ in length")
        if not np.all(self.weights > 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def raw_weights(self) -> np.ndarray:
        """Weights for integrating a raw integrand ``f`` (1-D Hermite only)."""
        if self.kind != "gauss-hermite-1d":
            return self.weights
        return np.exp(np.log(self.weights) + self.nodes**2)

    def integrate(self, values) -> complex:
        return np.sum(self.weights * np.asarray(values))


@lru_cache(maxsize=64)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Gauss-Hermite rule exact for ``x^j e^{-x^2}``, ``j <= 2*order - 1``."""
    if not (1 <= order <= GH_ORDER_CAP):
        raise InvalidOrder(f"Gauss-Hermite order must be in [1, {GH_ORDER_CAP}], got {order}")
    x, w = hermgauss(order)
    # symmetrize away the last-bit asymmetry of the eigen-solver
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule("gauss-hermite-1d", _frozen(x), _frozen(w), order)


def tensor_rule(order: int, scale: float = 1.0) -> QuadratureRule:
    """Tensor Gauss-Hermite rule for raw integrands on the plane.

    Nodes are scaled by ``scale``; suited to integrands decaying like
    ``exp(-(x^2 + y^2) / scale^2)``.
    """
    g = gauss_hermite_rule(order)
    x = g.nodes * scale
    w = g.raw_weights * scale
    X, Y = np.meshgrid(x, x, indexing="ij")
    W = np.outer(w, w)
    nodes = np.stack([X.ravel(), Y.ravel()], axis=1)
    return QuadratureRule("tensor-2d", _frozen(nodes), _frozen(W.ravel()), order)


@lru_cache(maxsize=64)
def polar_rule(beta: float, radial_order: int, angular_order: int) -> QuadratureRule:
    """Polar rule on the plane for ``dx dy``.

    Radial variable ``u = beta r^2 / 2`` with Gauss-Laguerre nodes, angle with
    the periodic trapezoid rule. Exact for ``e^{-u} * poly(u) * trig-poly(theta)``
    when the polynomial degree is below ``2*radial_order`` and the angular
    frequency below ``angular_order``.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if not (1 <= radial_order <= LAGUERRE_ORDER_CAP):
        raise InvalidOrder(f"radial order must be in [1, {LAGUERRE_ORDER_CAP}]")
    if angular_order < 1:
        raise InvalidOrder("angular order must be positive")
    u, wu = laggauss(radial_order)
    keep = wu > 0
    u, wu = u[keep], wu[keep]
    r = np.sqrt(2.0 * u / beta)
    # r dr dtheta = du dtheta / beta; undo the e^{-u} weight for raw integrands
    wr = np.exp(np.log(wu) + u) / beta
    theta = 2.0 * math.pi * np.arange(angular_order) / angular_order
    wt = 2.0 * math.pi / angular_order
    R, T = np.meshgrid(r, theta, indexing="ij")
    nodes = np.stack([(R * np.cos(T)).ravel(), (R * np.sin(T)).ravel()], axis=1)
    weights = np.repeat(wr * wt, angular_order)
    return QuadratureRule("polar-2d", _frozen(nodes), _frozen(weights), radial_order)
