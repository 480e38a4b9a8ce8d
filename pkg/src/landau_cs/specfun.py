"""Hermite and generalized Laguerre polynomials, factorial ratios.

Production evaluation always goes through three-term recurrences. The explicit
alternating sums cancel badly for large arguments and live only in the tests,
where they are evaluated in exact rational arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

HERMITE_DEGREE_CAP = 2000

# log-scale rescaling step for the normalized Hermite recurrence
_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


class DegreeTooLarge(ValueError):
    pass


class InvalidInput(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


def _check_degree(n: int, cap: int = HERMITE_DEGREE_CAP) -> None:
    if n < 0:
        raise InvalidInput(f"degree must be nonnegative, got {n}")
    if n > cap:
        raise DegreeTooLarge(f"degree {n} exceeds cap {cap}")


def _check_finite(x: float) -> None:
    if not math.isfinite(x):
        raise InvalidInput(f"argument must be finite, got {x}")


def arg(z: complex) -> float:
    """Principal argument; unlike ``cmath.phase`` it accepts subnormal parts."""
    z = complex(z)
    return math.atan2(z.imag, z.real)


@dataclass(frozen=True)
class ScaledValue:
    """A number stored as ``phase * exp(log_magnitude)``.

    ``phase`` is a unit complex number (or +-1). Zero is represented by
    ``log_magnitude = -inf``.
    """

    log_magnitude: float
    phase: complex = 1.0

    @classmethod
    def from_value(cls, v: complex) -> "ScaledValue":
        a = abs(v)
        if a == 0.0:
            return cls(-math.inf, 1.0)
        return cls(math.log(a), v / a)

    @classmethod
    def polar(cls, log_magnitude: float, angle: float) -> "ScaledValue":
        return cls(log_magnitude, cmath.exp(1j * angle))

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf

    def __mul__(self, other: "ScaledValue | complex") -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.from_value(other)
        return ScaledValue(self.log_magnitude + other.log_magnitude, self.phase * other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other: "ScaledValue | complex") -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.from_value(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero ScaledValue")
        return ScaledValue(self.log_magnitude - other.log_magnitude, self.phase / other.phase)

    def scale(self, log_factor: float) -> "ScaledValue":
        return ScaledValue(self.log_magnitude + log_factor, self.phase)

    def value(self) -> complex:
        if self.is_zero:
            return 0j
        return self.phase * math.exp(self.log_magnitude)

    def real(self) -> float:
        return self.value().real


# --------------------------------------------------------------------- Hermite


def hermite_sequence(n_max: int, xi: float) -> list[float]:
    """Physicists' Hermite values ``H_0(xi) .. H_{n_max}(xi)``.

    Uses ``H_{n+1} = 2 xi H_n - 2 n H_{n-1}``. Raises ``OverflowError`` once
    the values leave double range; use :func:`hermite_scaled` there.
    """
    _check_degree(n_max)
    _check_finite(xi)
    out = [1.0]
    if n_max == 0:
        return out
    out.append(2.0 * xi)
    for n in range(1, n_max):
        out.append(2.0 * xi * out[n] - 2.0 * n * out[n - 1])
    if not math.isfinite(out[-1]):
        raise OverflowError(f"H_{n_max}({xi}) overflows double precision; use hermite_scaled")
    return out


def hermite_eval(n: int, xi: float) -> float:
    """``H_n(xi)``; bit-identical to ``hermite_sequence(n, xi)[n]``."""
    _check_degree(n)
    _check_finite(xi)
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * xi
    for k in range(1, n):
        h_prev, h = h, 2.0 * xi * h - 2.0 * k * h_prev
    if not math.isfinite(h):
        raise OverflowError(f"H_{n}({xi}) overflows double precision; use hermite_scaled")
    return h


def hermite_normalized_sequence(n_max: int, xi: complex) -> tuple[list[complex], list[float]]:
    """Mantissas and log-scales of ``H_n(xi) / sqrt(2^n n!)``.

    Returns ``(mant, logscale)`` with
    ``H_n(xi) / sqrt(2^n n!) = mant[n] * exp(logscale[n])``.
    Works for complex ``xi`` too.

    The normalized recurrence
    ``h_{n+1} = sqrt(2/(n+1)) xi h_n - sqrt(n/(n+1)) h_{n-1}``
    keeps magnitudes near ``exp(|xi|^2/2)``; the running rescale handles the
    rest.
    """
    _check_degree(n_max)
    mant: list[complex] = [1.0]
    logs: list[float] = [0.0]
    if n_max == 0:
        return mant, logs
    mant.append(math.sqrt(2.0) * xi)
    logs.append(0.0)
    h_prev, h = 1.0, math.sqrt(2.0) * xi
    acc = 0.0
    for n in range(1, n_max):
        h_prev, h = h, math.sqrt(2.0 / (n + 1)) * xi * h - math.sqrt(n / (n + 1.0)) * h_prev
        if abs(h) > _RESCALE:
            h /= _RESCALE
            h_prev /= _RESCALE
            acc += _LOG_RESCALE
        mant.append(h)
        logs.append(acc)
    return mant, logs


def hermite_scaled(n_max: int, xi: complex) -> list[ScaledValue]:
    """``H_0 .. H_{n_max}`` at ``xi`` as overflow-safe :class:`ScaledValue`."""
    mant, logs = hermite_normalized_sequence(n_max, xi)
    out = []
    for n, (h, s) in enumerate(zip(mant, logs)):
        norm = 0.5 * (n * math.log(2.0) + math.lgamma(n + 1))
        out.append(ScaledValue.from_value(h).scale(s + norm))
    return out


# -------------------------------------------------------------------- Laguerre


def _laguerre_recurrence(m: int, alpha: int, x: complex) -> complex:
    # (n+1) L_{n+1} = (2n + 1 + alpha - x) L_n - (n + alpha) L_{n-1}
    if m == 0:
        return 1.0 + 0.0 * x
    l_prev, l = 1.0, 1.0 + alpha - x
    for n in range(1, m):
        l_prev, l = l, ((2 * n + 1 + alpha - x) * l - (n + alpha) * l_prev) / (n + 1)
    return l


def laguerre_eval(m: int, k: int, x: complex) -> complex:
    """Generalized Laguerre polynomial ``L_m^{(k)}(x)`` for integer ``k >= -m``.

    For ``k < 0`` the polynomial is rewritten as
    ``(-x)^p (m-p)!/m! L_{m-p}^{(p)}(x)`` with ``p = -k``, so only
    nonnegative upper indices reach the recurrence. ``x`` may be complex.
    """
    if m < 0:
        raise IndexOutOfRange(f"lower index must be nonnegative, got {m}")
    if k < -m:
        raise IndexOutOfRange(f"upper index {k} below -m = {-m}")
    if isinstance(x, complex):
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise InvalidInput(f"argument must be finite, got {x}")
    else:
        _check_finite(x)
    if k >= 0:
        return _laguerre_recurrence(m, k, x)
    p = -k
    ratio = math.exp(log_factorial_ratio(m - p, m))
    return (-x) ** p * ratio * _laguerre_recurrence(m - p, p, x)


# ----------------------------------------------------------- factorial ratios

_DIRECT_MAX = 128
_DIRECT_SPAN = 64


def log_factorial_ratio(p: int, q: int) -> float:
    """``ln(p! / q!)`` for nonnegative integers."""
    if p < 0 or q < 0:
        raise InvalidInput("factorial arguments must be nonnegative")
    if p > HERMITE_DEGREE_CAP * 4 or q > HERMITE_DEGREE_CAP * 4:
        raise DegreeTooLarge("factorial argument exceeds cap")
    if p == q:
        return 0.0
    lo, hi = min(p, q), max(p, q)
    if hi <= _DIRECT_MAX or hi - lo <= _DIRECT_SPAN:
        val = math.fsum(math.log(i) for i in range(lo + 1, hi + 1))
    else:
        val = math.lgamma(hi + 1) - math.lgamma(lo + 1)
    return val if p > q else -val


def log_factorial(n: int) -> float:
    return log_factorial_ratio(n, 0)


def log_laguerre_bound(m: int, k: int, w: float) -> float:
    """Log of ``sum_j C(k+m, m-j) w^j / j!``, which bounds ``|L_m^{(k)}(w)|`` for ``k, w >= 0``.

    Termwise triangle inequality on the explicit sum, so it is tight once
    ``k`` dominates ``w``.
    """
    if k < 0 or w < 0:
        raise InvalidInput("bound needs k >= 0 and w >= 0")
    logs = [
        math.lgamma(k + m + 1) - math.lgamma(m - j + 1) - math.lgamma(k + j + 1) - math.lgamma(j + 1) + (j * math.log(w) if j else 0.0)
        for j in range(m + 1)
        if j == 0 or w > 0
    ]
    top = max(logs)
    return top + math.log(math.fsum(math.exp(t - top) for t in logs))


def hermite_array(n: int, x) -> np.ndarray:
    """``H_n`` evaluated elementwise on a real or complex array."""
    _check_degree(n)
    x = np.asarray(x)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h
