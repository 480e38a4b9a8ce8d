"""Coherent states: canonical, Perelomov (group orbit) and Iwata (series).

Also holds the Heisenberg group law, its Schrodinger representation, the
Hermite product integral used to show the two constructions agree, and the
generating-function identity that falls out of that agreement.

Conjugation conventions
-----------------------
The Iwata series is built with coefficients ``conj(phi_k^{beta,m}(x, y))``.
With the unconjugated coefficients the series sums to the complex conjugate
of the Perelomov wave function, not to the wave function itself. Likewise the
generating function

    sum_k v^k L_m^{(k)}(2|v|^2) H_{k+m}(xi) / (k+m)!,   v = sqrt(beta)(a+ib)/2

sums to ``exp(-beta (a+ib)^2 / 4 + xi (a+ib) sqrt(beta)) H_m(xi - a sqrt(beta)) / m!``.
The variant with ``a - ib`` in the exponent is its conjugate; it is kept as
:func:`genfun_rhs_conjugated` so the discrepancy stays testable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .landau import LandauParams, PlaneLabel, basis_fn_scaled, basis_log_envelope
from .quadrature import InsufficientQuadratureOrder, QuadratureRule, gauss_hermite_rule
from .series import SeriesResult, TruncationPolicy, envelope_cutoff, envelope_tol, sum_series
from .specfun import (
    ScaledValue,
    arg,
    hermite_array,
    hermite_eval,
    hermite_normalized_sequence,
    laguerre_eval,
    log_factorial,
    log_factorial_ratio,
    log_laguerre_bound,
)

LOG_PI = math.log(math.pi)

Wavefunction = Callable[[float], complex]


class OrderViolation(ValueError):
    pass


# ------------------------------------------------------------ Heisenberg group


@dataclass(frozen=True)
class GroupElement:
    x: float
    y: float
    t: float = 0.0

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.x, -self.y, -self.t)


IDENTITY = GroupElement(0.0, 0.0, 0.0)


def heisenberg_mul(g1: GroupElement, g2: GroupElement) -> GroupElement:
    return GroupElement(
        g1.x + g2.x,
        g1.y + g2.y,
        g1.t + g2.t + 0.5 * (g1.x * g2.y - g2.x * g1.y),
    )


@dataclass(frozen=True)
class SampledWavefunction:
    """A wave function known on a grid; linear interpolation in between."""

    grid: tuple[float, ...]
    values: tuple[complex, ...]

    def __call__(self, xi: float) -> complex:
        g = np.asarray(self.grid)
        v = np.asarray(self.values, dtype=complex)
        return complex(np.interp(xi, g, v.real, 0.0, 0.0) + 1j * np.interp(xi, g, v.imag, 0.0, 0.0))


def schrodinger_action(beta: float, g: GroupElement, psi: Wavefunction, xi: float) -> complex:
    """``(T_beta(g) psi)(xi)``."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    s = math.sqrt(beta)
    phase = cmath.exp(1j * (beta * g.t - s * g.y * xi + 0.5 * beta * g.x * g.y))
    return phase * psi(xi - s * g.x)


def act(beta: float, g: GroupElement, psi: Wavefunction) -> Wavefunction:
    """``T_beta(g) psi`` as a new callable."""
    return lambda xi: schrodinger_action(beta, g, psi, xi)


# ------------------------------------------------------- Hermite functions


def _hermite_function_logs(n_max: int, xi: float) -> list[ScaledValue]:
    mant, logs = hermite_normalized_sequence(n_max, xi)
    base = -0.5 * xi * xi - 0.25 * LOG_PI
    return [ScaledValue.from_value(h).scale(s + base) for h, s in zip(mant, logs)]


def hermite_gaussian_sequence(n_max: int, xi: float) -> list[float]:
    return [v.real() for v in _hermite_function_logs(n_max, xi)]


def hermite_gaussian(n: int, xi: float) -> float:
    """Normalized Hermite function ``(sqrt(pi) 2^n n!)^{-1/2} e^{-xi^2/2} H_n(xi)``."""
    return _hermite_function_logs(n, xi)[n].real()


# ----------------------------------------------------------- canonical states


def canonical_cs_closed(z: complex, xi: float) -> complex:
    return math.pi**-0.25 * cmath.exp(
        -0.5 * xi * xi + math.sqrt(2.0) * xi * z - 0.5 * z * z - 0.5 * abs(z) ** 2
    )


def canonical_cs_series(z: complex, xi: float, pol: TruncationPolicy | None = None) -> SeriesResult:
    """Fock-basis expansion ``e^{-|z|^2/2} sum z^n / sqrt(n!) phi_n(xi)``."""
    pol = pol or TruncationPolicy.from_env()
    z = complex(z)
    if z == 0:
        return SeriesResult(complex(hermite_gaussian(0, xi)), 1, 0.0)
    funcs = _hermite_function_logs(pol.max_terms, xi)
    log_abs_z = math.log(abs(z))
    theta = arg(z)

    def terms():
        for n in range(pol.max_terms):
            coef = ScaledValue.polar(n * log_abs_z - 0.5 * abs(z) ** 2 - 0.5 * log_factorial(n), n * theta)
            yield (coef * funcs[n]).value()

    # |phi_n| <= pi^{-1/4}, so the coefficient modulus bounds each term
    cut = envelope_cutoff(
        lambda n: n * log_abs_z - 0.5 * abs(z) ** 2 - 0.5 * log_factorial(n), envelope_tol(pol), pol.max_terms
    )
    return sum_series(terms(), pol, min_terms=cut + 1)


# ----------------------------------------------------------- Perelomov states


def perelomov_state(p: LandauParams, label: PlaneLabel, xi: float) -> complex:
    """Orbit of ``phi_m`` under ``T_beta(x, y, 0)``, evaluated in closed form."""
    s = math.sqrt(p.beta)
    u = xi - s * label.x
    phase = cmath.exp(1j * (-s * xi * label.y + 0.5 * p.beta * label.x * label.y))
    return phase * hermite_gaussian(p.m, u)


def reference_state(m: int) -> Wavefunction:
    return lambda xi: hermite_gaussian(m, xi)


# -------------------------------------------------------------- Iwata states


def iwata_state(
    p: LandauParams,
    label: PlaneLabel,
    xi: float,
    pol: TruncationPolicy | None = None,
    *,
    conjugate: bool = True,
) -> SeriesResult:
    """``(beta/2pi)^{-1/2} sum_n c_n phi_n(xi)`` over the Hermite functions.

    ``c_n = conj(phi_{n-m}^{beta,m}(x, y))``; the first ``m`` coefficients use
    negative basis indices. ``conjugate=False`` drops the conjugation and
    yields the complex conjugate of :func:`perelomov_state`.
    """
    pol = pol or TruncationPolicy.from_env()
    m = p.m
    n_top = pol.max_terms + 1
    funcs = _hermite_function_logs(n_top, xi)
    log_norm = -0.5 * (math.log(p.beta) - math.log(2.0 * math.pi))

    def terms():
        # at the origin only phi_0 survives, so the series ends at n = m
        last = m if label.r2 == 0 else n_top - 1
        for n in range(last + 1):
            c = basis_fn_scaled(p, n - m, label)
            if conjugate:
                c = ScaledValue(c.log_magnitude, c.phase.conjugate())
            yield (c * funcs[n]).scale(log_norm).value()

    return sum_series(terms(), pol, fixed=m, min_terms=_iwata_min_terms(p, label, pol))


def _iwata_min_terms(p: LandauParams, label: PlaneLabel, pol: TruncationPolicy) -> int:
    if label.r2 == 0:
        return 0
    # |phi_n(xi)| <= pi^{-1/4}; the basis-function bound does the rest
    return envelope_cutoff(basis_log_envelope(p, label), envelope_tol(pol), pol.max_terms) + 1


def iwata_weight(p: LandauParams, label: PlaneLabel | None = None) -> float:
    """``omega(u) = K(u, u)``; constant ``beta / 2pi`` for every Landau level."""
    return p.beta / (2.0 * math.pi)


def coherent_state_transform(
    p: LandauParams,
    label: PlaneLabel,
    psi: Wavefunction,
    rule: QuadratureRule | None = None,
) -> complex:
    """``W[psi](u) = omega(u)^{1/2} <u|psi>`` at a single label.

    The overlap is integrated on a Gauss-Hermite grid centred at the middle of
    the coherent state's envelope, using the closed form of the state.
    """
    rule = rule or gauss_hermite_rule(128)
    centre = 0.5 * math.sqrt(p.beta) * label.x
    xs = rule.nodes + centre
    state = np.array([perelomov_state(p, label, x) for x in xs])
    vals = np.array([psi(x) for x in xs], dtype=complex)
    overlap = np.sum(rule.raw_weights * np.conj(state) * vals)
    return math.sqrt(iwata_weight(p, label)) * complex(overlap)


# ----------------------------------------------------- Hermite product integral


@dataclass(frozen=True)
class HermiteIntegralArgs:
    """``int e^{-u^2} H_s(u + alpha) H_l(u + gamma) du``."""

    s: int
    l: int
    alpha: complex
    gamma: complex

    def __post_init__(self):
        if self.s < 0 or self.l < 0:
            raise ValueError("Hermite degrees must be nonnegative")

    def swapped(self) -> "HermiteIntegralArgs":
        return HermiteIntegralArgs(self.l, self.s, self.gamma, self.alpha)


def hermite_product_integral_closed(args: HermiteIntegralArgs) -> complex:
    """``2^l sqrt(pi) s! gamma^{l-s} L_s^{(l-s)}(-2 alpha gamma)``, needs ``s <= l``."""
    s, l = args.s, args.l
    if s > l:
        raise OrderViolation(f"closed form needs s <= l, got s={s}, l={l}; swap the arguments")
    lag = laguerre_eval(s, l - s, complex(-2.0 * args.alpha * args.gamma))
    pref = math.exp(l * math.log(2.0) + 0.5 * LOG_PI + log_factorial(s))
    return pref * complex(args.gamma) ** (l - s) * lag


def hermite_product_integral(args: HermiteIntegralArgs) -> complex:
    """Closed form for either ordering of ``(s, l)``."""
    if args.s > args.l:
        return hermite_product_integral_closed(args.swapped())
    return hermite_product_integral_closed(args)


def hermite_product_integral_quad(args: HermiteIntegralArgs, rule: QuadratureRule | None = None) -> complex:
    """Same integral by Gauss-Hermite quadrature; exact for adequate order."""
    need = (args.s + args.l) // 2 + 1
    rule = rule or gauss_hermite_rule(need)
    if rule.order < need:
        raise InsufficientQuadratureOrder(
            f"rule order {rule.order} < {need} needed for degrees ({args.s}, {args.l})"
        )
    u = rule.nodes.astype(complex)
    vals = hermite_array(args.s, u + args.alpha) * hermite_array(args.l, u + args.gamma)
    return complex(np.sum(rule.weights * vals))


def hermite_integral_shifts(beta: float, x: float, y: float) -> tuple[complex, complex]:
    """Shifts ``(alpha, gamma)`` with ``-2 alpha gamma = beta (x^2+y^2)/2``."""
    h = 0.5 * math.sqrt(beta)
    return -h * complex(x, -y), h * complex(x, y)


def basis_factor_via_integral(beta: float, m: int, n: int, x: float, y: float, *, quad: bool = False) -> complex:
    """``(x+iy)^{n-m} L_m^{(n-m)}(beta r^2/2)`` from a Hermite product integral."""
    alpha, gamma = hermite_integral_shifts(beta, x, y)
    args = HermiteIntegralArgs(m, n, alpha, gamma)
    integral = hermite_product_integral_quad(args) if quad else hermite_product_integral(args)
    log_pref = 0.5 * (m - n) * math.log(beta) - m * math.log(2.0) - log_factorial(m) - 0.5 * LOG_PI
    return math.exp(log_pref) * integral


def basis_factor_direct(beta: float, m: int, n: int, x: float, y: float) -> complex:
    """``(x+iy)^{n-m} L_m^{(n-m)}(beta r^2/2)`` evaluated directly."""
    z = complex(x, y)
    w = 0.5 * beta * (x * x + y * y)
    k = n - m
    if k >= 0:
        return z**k * laguerre_eval(m, k, w)
    q = -k
    # z^{-q} (-w)^q = (-beta/2)^q conj(z)^q, finite at the origin
    return (-0.5 * beta) ** q * z.conjugate() ** q * math.exp(log_factorial_ratio(m - q, m)) * laguerre_eval(m - q, q, w)


def iwata_state_via_integrals(
    p: LandauParams,
    label: PlaneLabel,
    xi: float,
    pol: TruncationPolicy | None = None,
) -> SeriesResult:
    """Unconjugated Iwata series with every coefficient built from ``I_{m,n}``.

    ``e^{-beta r^2/4} / (2^{m/2} sqrt(pi m!)) sum_n I_{m,n} phi_n(xi) / (2^{n/2} sqrt(n!))``.
    Agrees with ``iwata_state(..., conjugate=False)``.
    """
    pol = pol or TruncationPolicy.from_env()
    m = p.m
    alpha, gamma = hermite_integral_shifts(p.beta, label.x, label.y)
    funcs = _hermite_function_logs(pol.max_terms, xi)
    log_pref = -0.25 * p.beta * label.r2 - 0.5 * m * math.log(2.0) - 0.5 * (LOG_PI + log_factorial(m))

    def terms():
        last = m if label.r2 == 0 else pol.max_terms - 1
        for n in range(last + 1):
            integral = hermite_product_integral(HermiteIntegralArgs(m, n, alpha, gamma))
            c = ScaledValue.from_value(integral).scale(log_pref - 0.5 * (n * math.log(2.0) + log_factorial(n)))
            yield (c * funcs[n]).value()

    return sum_series(terms(), pol, fixed=m, min_terms=_iwata_min_terms(p, label, pol))


# --------------------------------------------------------- generating function


@dataclass(frozen=True)
class GenFunParams:
    beta: float
    m: int
    a: float
    b: float
    xi: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @classmethod
    def from_tau(cls, tau: float, xi: float, beta: float = 1.0) -> "GenFunParams":
        """``m = 0, b = 0, a = 2 tau / sqrt(beta)``: the classical Hermite case."""
        return cls(beta, 0, 2.0 * tau / math.sqrt(beta), 0.0, xi)

    @property
    def v(self) -> complex:
        return 0.5 * math.sqrt(self.beta) * complex(self.a, self.b)


def genfun_lhs(g: GenFunParams, pol: TruncationPolicy | None = None) -> SeriesResult:
    """``sum_{k>=-m} v^k L_m^{(k)}(2|v|^2) H_{k+m}(xi) / (k+m)!``, ``v = sqrt(beta)(a+ib)/2``."""
    pol = pol or TruncationPolicy.from_env()
    m = g.m
    v = g.v
    w = 2.0 * abs(v) ** 2
    mant, logs = hermite_normalized_sequence(pol.max_terms + m, g.xi)
    log2 = math.log(2.0)

    def hermite_over_factorial(n: int) -> ScaledValue:
        # H_n / n! = h_n sqrt(2^n / n!)
        return ScaledValue.from_value(mant[n]).scale(logs[n] + 0.5 * (n * log2 - log_factorial(n)))

    def terms():
        for q in range(m, 0, -1):
            # k = -q: (-2 conj v)^q L_{m-q}^{(q)}(w) H_{m-q}(xi) / m!
            if v == 0:
                yield 0j
                continue
            c = ScaledValue.polar(q * math.log(2.0 * abs(v)), -q * arg(v)) * ((-1) ** q * laguerre_eval(m - q, q, w))
            h = hermite_over_factorial(m - q).scale(-log_factorial_ratio(m, m - q))
            yield (c * h).value()
        for k in range(0, pol.max_terms + 1):
            if k and v == 0:
                return  # every k > 0 term vanishes
            c = ScaledValue.polar(k * math.log(abs(v)) if k else 0.0, k * arg(v) if k else 0.0)
            c = c * laguerre_eval(m, k, w)
            yield (c * hermite_over_factorial(k + m)).value()

    if v == 0:
        return sum_series(terms(), pol, fixed=m)

    # |H_n(xi)| / n! <= e^{xi^2/2} sqrt(2^n / n!)
    def envelope(k: int) -> float:
        n = k + m
        return 0.5 * g.xi**2 + k * math.log(abs(v)) + log_laguerre_bound(m, k, w) + 0.5 * (n * log2 - log_factorial(n))

    return sum_series(terms(), pol, fixed=m, min_terms=envelope_cutoff(envelope, envelope_tol(pol), pol.max_terms) + 1)


def _genfun_closed(g: GenFunParams, sign_b: float) -> complex:
    zc = complex(g.a, sign_b * g.b)
    s = math.sqrt(g.beta)
    expo = -0.25 * g.beta * zc * zc + g.xi * zc * s
    return cmath.exp(expo - log_factorial(g.m)) * hermite_eval(g.m, g.xi - g.a * s)


def genfun_rhs(g: GenFunParams) -> complex:
    """``exp(-beta (a+ib)^2/4 + xi (a+ib) sqrt(beta)) H_m(xi - a sqrt(beta)) / m!``."""
    return _genfun_closed(g, 1.0)


def genfun_rhs_conjugated(g: GenFunParams) -> complex:
    """The ``a - ib`` variant; equals ``conj(genfun_lhs)`` for real ``xi``."""
    return _genfun_closed(g, -1.0)
