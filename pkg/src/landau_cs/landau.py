"""Planar Landau levels: energies, eigenbasis, reproducing kernel."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .series import SeriesResult, TruncationPolicy, envelope_cutoff, envelope_tol, sum_series
from .specfun import IndexOutOfRange, ScaledValue, arg, laguerre_eval, log_factorial_ratio, log_laguerre_bound

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class LandauParams:
    beta: float
    m: int

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"level index must be a nonnegative integer, got {self.m}")


@dataclass(frozen=True)
class PlaneLabel:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("plane label coordinates must be finite")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @property
    def r2(self) -> float:
        return self.x * self.x + self.y * self.y

    def wedge(self, other: "PlaneLabel") -> float:
        return self.x * other.y - other.x * self.y

    def dist2(self, other: "PlaneLabel") -> float:
        dx, dy = self.x - other.x, self.y - other.y
        return dx * dx + dy * dy


def landau_energy(p: LandauParams) -> float:
    return (p.m + 0.5) * p.beta


def basis_fn_scaled(p: LandauParams, k: int, pt: PlaneLabel) -> ScaledValue:
    """Eigenfunction ``phi_k^{beta,m}(x, y)`` in log-magnitude form.

    For ``k < 0`` the factor ``zeta^k L_m^{(k)}(|zeta|^2)`` with
    ``zeta = sqrt(beta/2)(x + iy)`` is evaluated as
    ``(-1)^p conj(zeta)^p (m-p)!/m! L_{m-p}^{(p)}(|zeta|^2)``, ``p = -k``,
    which stays finite at the origin.
    """
    m = p.m
    if k < -m:
        raise IndexOutOfRange(f"basis index {k} below -m = {-m}")
    zeta = math.sqrt(p.beta / 2.0) * pt.z
    w = abs(zeta) ** 2
    log_c = 0.5 * (math.log(p.beta) - LOG_2PI - log_factorial_ratio(k + m, m))
    n = abs(k)
    if n and zeta == 0:
        return ScaledValue(-math.inf)
    if k >= 0:
        lag = laguerre_eval(m, k, w)
        angle = k * arg(zeta) if n else 0.0
        sign = 1.0
    else:
        lag = laguerre_eval(m - n, n, w) * math.exp(log_factorial_ratio(m - n, m))
        angle = -n * arg(zeta)
        sign = -1.0 if n % 2 else 1.0
    log_pow = n * math.log(abs(zeta)) if n else 0.0
    return ScaledValue.polar(log_c + log_pow - 0.5 * w, angle) * (sign * lag)


def basis_fn(p: LandauParams, k: int, pt: PlaneLabel) -> complex:
    return basis_fn_scaled(p, k, pt).value()


def basis_log_envelope(p: LandauParams, pt: PlaneLabel):
    """``k -> log`` of an upper bound on ``|phi_k^{beta,m}(pt)| / sqrt(beta/2pi)``, ``k >= 0``."""
    w = 0.5 * p.beta * pt.r2
    log_zeta = 0.5 * math.log(w) if w > 0 else -math.inf

    def env(k: int) -> float:
        power = k * log_zeta if k else 0.0
        return 0.5 * log_factorial_ratio(p.m, k + p.m) + power - 0.5 * w + log_laguerre_bound(p.m, k, w)

    return env


def kernel_closed(p: LandauParams, r: PlaneLabel, r2: PlaneLabel) -> complex:
    d2 = r.dist2(r2)
    phase = cmath.exp(-0.5j * p.beta * r.wedge(r2))
    lag = laguerre_eval(p.m, 0, 0.5 * p.beta * d2)
    return p.beta / (2.0 * math.pi) * phase * math.exp(-0.25 * p.beta * d2) * lag


def kernel_series(
    p: LandauParams,
    r: PlaneLabel,
    r2: PlaneLabel,
    pol: TruncationPolicy | None = None,
) -> SeriesResult:
    """Partial sums of ``sum_k phi_k(r) conj(phi_k(r2))`` from ``k = -m``."""

    # phi_k vanishes at the origin for k != 0
    last = 0 if r.r2 == 0 or r2.r2 == 0 else math.inf

    def terms():
        k = -p.m
        while k <= last:
            a = basis_fn_scaled(p, k, r)
            b = basis_fn_scaled(p, k, r2)
            yield (a * ScaledValue(b.log_magnitude, b.phase.conjugate())).value()
            k += 1

    pol = pol or TruncationPolicy.from_env()
    if last == 0:
        return sum_series(terms(), pol, fixed=p.m)
    ea, eb = basis_log_envelope(p, r), basis_log_envelope(p, r2)
    log_scale = math.log(p.beta / (2.0 * math.pi))
    cut = envelope_cutoff(lambda k: ea(k) + eb(k) + log_scale, envelope_tol(pol), pol.max_terms)
    return sum_series(terms(), pol, fixed=p.m, min_terms=cut + 1)
