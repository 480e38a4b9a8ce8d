"""Adaptive truncation of the infinite series used throughout the package."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable

MAX_TERMS_ENV = "LANDAU_CS_MAX_TERMS"


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop after ``count`` consecutive terms below ``tail_tol * max(|S|, 1)``."""

    max_terms: int = 512
    tail_tol: float = 1e-14
    count: int = 3

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if self.count < 1:
            raise ValueError("count must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "TruncationPolicy":
        raw = os.environ.get(MAX_TERMS_ENV)
        if raw is not None and "max_terms" not in overrides:
            overrides["max_terms"] = int(raw)
        return cls(**overrides)


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float

    def __complex__(self) -> complex:
        return complex(self.value)


class NonConvergence(RuntimeError):
    def __init__(self, message: str, partial: SeriesResult):
        super().__init__(message)
        self.partial = partial


def _tail_from(last: list[float]) -> float:
    if not last or max(last) == 0.0:
        return 0.0
    if len(last) >= 2 and last[-2] > 0.0:
        rho = last[-1] / last[-2]
        if rho < 1.0:
            return last[-1] * rho / (1.0 - rho)
    return len(last) * max(last)


def envelope_cutoff(log_envelope: Callable[[int], float], log_tol: float, limit: int) -> int:
    """First index where a unimodal log upper bound has peaked and fallen below ``log_tol``.

    Series callers pass the result as ``min_terms``: terms that are small only
    by accident (parity, a polynomial root, rounding) cannot end the sum while
    the bound says the tail may still matter. Returns ``limit`` if never reached.
    """
    prev = log_envelope(0)
    for k in range(1, limit):
        cur = log_envelope(k)
        if cur < log_tol and cur <= prev:
            return k
        prev = cur
    return limit


def envelope_tol(policy: TruncationPolicy) -> float:
    # one decade below the stop threshold leaves room for the geometric tail
    return math.log(policy.tail_tol) - math.log(10.0)


def sum_series(
    terms: Iterable[complex],
    policy: TruncationPolicy | None = None,
    *,
    fixed: int = 0,
    min_terms: int = 0,
) -> SeriesResult:
    """Sum ``terms`` until the stop rule fires.

    The first ``fixed`` terms are always taken and never count toward the stop
    rule (finite blocks such as the negative-index terms). The rule is also
    suppressed before ``fixed + min_terms`` terms; callers derive ``min_terms``
    from :func:`envelope_cutoff` so it cannot fire while the tail may matter. Exactly-zero terms neither advance nor
    reset the small-term count.
    """
    pol = policy or TruncationPolicy.from_env()
    re: list[float] = []
    im: list[float] = []
    running = 0j
    small = 0
    mags: list[float] = []
    used = 0
    for t in terms:
        t = complex(t)
        re.append(t.real)
        im.append(t.imag)
        running += t
        used += 1
        a = abs(t)
        mags.append(a)
        if used <= fixed:
            continue
        if a == 0.0:
            # structural zeros (parity, polynomial roots) say nothing about the tail
            pass
        elif a <= pol.tail_tol * max(abs(running), 1.0):
            small += 1
        else:
            small = 0
        if small >= pol.count and used >= fixed + min_terms:
            value = complex(math.fsum(re), math.fsum(im))
            return SeriesResult(value, used, _tail_from(mags[-pol.count:]))
        if used >= pol.max_terms:
            break
    else:
        # finite series, nothing left out
        return SeriesResult(complex(math.fsum(re), math.fsum(im)), used, 0.0)
    value = complex(math.fsum(re), math.fsum(im))
    tail = _tail_from(mags[-pol.count:])
    result = SeriesResult(value, used, tail)
    if used >= pol.max_terms and tail > pol.tail_tol * max(abs(value), 1.0):
        raise NonConvergence(
            f"series not converged after {used} terms (tail ~ {tail:.3e})", result
        )
    return result
