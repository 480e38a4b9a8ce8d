"""Grid sweeps that pit every identity against an independent oracle.

Each check takes a :class:`CheckSpec` (grid, tolerance, metric) and returns a
:class:`VerificationReport`. A failing or crashing grid point is recorded, never
raised.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, Iterable, Literal

import numpy as np

from . import coherent as co
from .landau import LandauParams, PlaneLabel, basis_fn, kernel_closed, kernel_series
from .quadrature import InsufficientQuadratureOrder, gauss_hermite_rule, polar_rule
from .series import TruncationPolicy
from .specfun import hermite_array

Metric = Literal["abs", "rel", "mixed"]
Point = dict[str, Any]

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class CheckSpec:
    """A named check: grid axes (cartesian product) or explicit points."""

    name: str
    grid: dict[str, tuple] | None = None
    points: tuple[Point, ...] | None = None
    tolerance: float = 1e-8
    metric: Metric = "mixed"
    seed: int = DEFAULT_SEED
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.grid is None and self.points is None:
            raise ValueError("a check needs a grid or explicit points")
        if not self.expand():
            raise ValueError(f"check {self.name!r} has an empty grid")

    def expand(self) -> list[Point]:
        if self.points is not None:
            return [dict(p) for p in self.points]
        keys = list(self.grid)
        return [dict(zip(keys, combo)) for combo in itertools.product(*(self.grid[k] for k in keys))]

    def with_overrides(self, tolerance: float | None = None, seed: int | None = None) -> "CheckSpec":
        kw = {}
        if tolerance is not None:
            kw["tolerance"] = tolerance
        if seed is not None:
            kw["seed"] = seed
        return replace(self, **kw) if kw else self


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check.

    ``worst_abs_err`` and ``worst_rel_err`` are both taken at
    ``worst_case_params``, the point that is worst under the declared metric.
    A pure relative maximum is meaningless near exact zeros of the oracle.
    """

    check_name: str
    grid: list[Point]
    worst_abs_err: float
    worst_rel_err: float
    worst_case_params: Point
    tolerance: float
    passed: bool
    runtime_ms: float
    seed: int
    metric: Metric = "mixed"
    worst_metric_err: float = math.nan
    failures: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        for extra in ("metric", "worst_metric_err", "failures"):
            d.pop(extra)
        return d


def errors(lhs: complex, rhs: complex) -> tuple[float, float, float]:
    """``(abs, rel, mixed)``; mixed divides by ``max(1, |rhs|)``."""
    a = abs(complex(lhs) - complex(rhs))
    r = abs(complex(rhs))
    rel = a / r if r > 0 else (0.0 if a == 0 else math.inf)
    return a, rel, a / max(1.0, r)


def _run(spec: CheckSpec, points: list[Point], evaluate: Callable[[Point], Iterable[tuple[complex, complex]]]) -> VerificationReport:
    t0 = time.perf_counter()
    idx = {"abs": 0, "rel": 1, "mixed": 2}[spec.metric]
    worst = (-1.0, 0.0, 0.0)
    worst_key = -math.inf
    worst_point: Point = points[0]
    failures: list[str] = []
    for pt in points:
        try:
            pairs = list(evaluate(pt))
            errs = [errors(lhs, rhs) for lhs, rhs in pairs]
        except Exception as exc:  # noqa: BLE001 - recorded, never raised
            failures.append(f"{pt}: {type(exc).__name__}: {exc}")
            errs = [(math.inf, math.inf, math.inf)]
        for e in errs:
            key = e[idx]
            if key > worst_key or math.isnan(key):
                worst_key, worst, worst_point = key, e, pt
    passed = not failures and worst_key <= spec.tolerance
    return VerificationReport(
        check_name=spec.name,
        grid=points,
        worst_abs_err=worst[0],
        worst_rel_err=worst[1],
        worst_case_params=worst_point,
        tolerance=spec.tolerance,
        passed=bool(passed),
        runtime_ms=(time.perf_counter() - t0) * 1e3,
        seed=spec.seed,
        metric=spec.metric,
        worst_metric_err=worst_key if worst_key > -math.inf else 0.0,
        failures=tuple(failures),
    )


def _policy(spec: CheckSpec) -> TruncationPolicy:
    opts = spec.options
    return TruncationPolicy.from_env(**{k: opts[k] for k in ("max_terms", "tail_tol") if k in opts})


# ------------------------------------------------------------------- checks

_AB = (-1.0, -0.3, 0.0, 0.4, 1.2)
_BETAS = (0.5, 1.0, 2.0)
_XIS = (-2.0, 0.0, 0.7, 3.0)


def verify_genfun(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["genfun"]
    pol = _policy(spec)

    def evaluate(pt):
        g = co.GenFunParams(pt["beta"], pt["m"], pt["a"], pt["b"], pt["xi"])
        yield co.genfun_lhs(g, pol).value, co.genfun_rhs(g)

    return _run(spec, spec.expand(), evaluate)


def verify_genfun_reduction(spec: CheckSpec | None = None) -> VerificationReport:
    """``m=0, b=0, a=2 tau/sqrt(beta)`` against ``exp(2 xi tau - tau^2)``."""
    spec = spec or DEFAULT_CHECKS["genfun-reduction"]
    pol = _policy(spec)

    def evaluate(pt):
        g = co.GenFunParams.from_tau(pt["tau"], pt["xi"], pt["beta"])
        yield co.genfun_lhs(g, pol).value, math.exp(2.0 * pt["xi"] * pt["tau"] - pt["tau"] ** 2)

    return _run(spec, spec.expand(), evaluate)


def verify_state_equivalence(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["state-equivalence"]
    pol = _policy(spec)

    def evaluate(pt):
        p = LandauParams(pt["beta"], pt["m"])
        lab = PlaneLabel(pt["x"], pt["y"])
        yield co.iwata_state(p, lab, pt["xi"], pol).value, co.perelomov_state(p, lab, pt["xi"])

    return _run(spec, spec.expand(), evaluate)


def verify_kernel(spec: CheckSpec | None = None) -> VerificationReport:
    """Series kernel vs closed kernel, plus Hermitian symmetry of the closed form."""
    spec = spec or DEFAULT_CHECKS["kernel"]
    pol = _policy(spec)
    max_bd2 = spec.options.get("max_beta_dist2", 10.0)
    points = [
        pt
        for pt in spec.expand()
        if pt["beta"] * ((pt["r"][0] - pt["r2"][0]) ** 2 + (pt["r"][1] - pt["r2"][1]) ** 2) <= max_bd2
    ]

    def evaluate(pt):
        p = LandauParams(pt["beta"], pt["m"])
        r, r2 = PlaneLabel(*pt["r"]), PlaneLabel(*pt["r2"])
        closed = kernel_closed(p, r, r2)
        yield kernel_series(p, r, r2, pol).value, closed
        yield kernel_closed(p, r2, r).conjugate(), closed

    return _run(spec, points, evaluate)


def verify_kernel_diagonal(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["kernel-diagonal"]

    def evaluate(pt):
        p = LandauParams(pt["beta"], pt["m"])
        r = PlaneLabel(*pt["r"])
        yield kernel_closed(p, r, r), pt["beta"] / (2.0 * math.pi)

    return _run(spec, spec.expand(), evaluate)


def gram_matrix(p: LandauParams, ks: Iterable[int], radial_order: int = 24, angular_order: int = 24) -> np.ndarray:
    """Gram matrix of ``phi_k^{beta,m}`` under the polar rule."""
    ks = list(ks)
    rule = polar_rule(p.beta, radial_order, angular_order)
    vals = np.array([[basis_fn(p, k, PlaneLabel(x, y)) for x, y in rule.nodes] for k in ks])
    return (vals * rule.weights) @ vals.conj().T


def verify_orthonormality(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["orthonormality"]
    count = spec.options.get("count", 10)
    radial = spec.options.get("radial_order", 24)
    angular = spec.options.get("angular_order", 24)

    def evaluate(pt):
        p = LandauParams(pt["beta"], pt["m"])
        # radial integrand degree in u is at most (count-1) + m, angular frequency < count
        if 2 * radial <= count + p.m or angular < count:
            raise InsufficientQuadratureOrder(f"polar rule ({radial}, {angular}) too small for {count} functions at m={p.m}")
        g = gram_matrix(p, range(-p.m, -p.m + count), radial, angular)
        eye = np.eye(count)
        return list(zip(g.ravel(), eye.ravel()))

    return _run(spec, spec.expand(), evaluate)


def _hermite_function_array(n: int, xs: np.ndarray) -> np.ndarray:
    norm = math.exp(-0.5 * (0.5 * math.log(math.pi) + n * math.log(2.0) + math.lgamma(n + 1)))
    return norm * hermite_array(n, xs) * np.exp(-0.5 * xs * xs)


def resolution_integral(
    p: LandauParams,
    psi_index: int,
    radial_order: int = 30,
    angular_order: int = 8,
    inner_order: int = 100,
) -> float:
    """``int |<psi, Phi_(x,y)>|^2 (beta/2pi) dx dy`` for ``psi = phi_j``.

    Outer integral: polar Gauss-Laguerre rule over the whole plane. Inner
    products: Gauss-Hermite grid centred between ``psi`` and the shifted state.
    """
    outer = polar_rule(p.beta, radial_order, angular_order)
    inner = gauss_hermite_rule(inner_order)
    s = math.sqrt(p.beta)
    x = outer.nodes[:, 0][:, None]
    y = outer.nodes[:, 1][:, None]
    xi = inner.nodes[None, :] + 0.5 * s * x
    psi = _hermite_function_array(psi_index, xi)
    state = np.exp(1j * (-s * xi * y + 0.5 * p.beta * x * y)) * _hermite_function_array(p.m, xi - s * x)
    overlaps = (psi * state) @ inner.raw_weights
    return float(np.sum(outer.weights * np.abs(overlaps) ** 2) * p.beta / (2.0 * math.pi))


def verify_resolution_identity(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["resolution-identity"]
    opts = {k: spec.options[k] for k in ("radial_order", "angular_order", "inner_order") if k in spec.options}

    def evaluate(pt):
        p = LandauParams(pt["beta"], pt["m"])
        yield resolution_integral(p, pt["psi"], **opts), 1.0

    return _run(spec, spec.expand(), evaluate)


def verify_canonical_series(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["canonical-series"]
    pol = _policy(spec)
    rng = np.random.default_rng(spec.seed)
    extra = spec.options.get("random_xi", 0)
    points = spec.expand()
    if extra:
        zs = sorted({(pt["z_re"], pt["z_im"]) for pt in points})
        for xi in np.round(rng.uniform(-4.0, 4.0, extra), 12):
            points += [{"z_re": zr, "z_im": zi, "xi": float(xi)} for zr, zi in zs]

    def evaluate(pt):
        z = complex(pt["z_re"], pt["z_im"])
        yield co.canonical_cs_series(z, pt["xi"], pol).value, co.canonical_cs_closed(z, pt["xi"])

    return _run(spec, points, evaluate)


def canonical_moments(z: complex, order: int = 60) -> dict[str, float]:
    """Norm, means and variances of the canonical state by Gauss-Hermite quadrature.

    Momentum moments use ``Phi' = (sqrt(2) z - xi) Phi``, the exact derivative
    of the closed form.
    """
    rule = gauss_hermite_rule(order)
    centre = math.sqrt(2.0) * z.real
    xs = rule.nodes + centre
    phi = np.array([co.canonical_cs_closed(z, x) for x in xs])
    dphi = (math.sqrt(2.0) * z - xs) * phi
    w = rule.raw_weights
    dens = np.abs(phi) ** 2
    norm = float(np.sum(w * dens))
    mean_x = float(np.sum(w * xs * dens)) / norm
    mean_x2 = float(np.sum(w * xs**2 * dens)) / norm
    mean_p = float(np.real(np.sum(w * np.conj(phi) * (-1j) * dphi))) / norm
    mean_p2 = float(np.sum(w * np.abs(dphi) ** 2)) / norm
    return {
        "norm": norm,
        "mean_x": mean_x,
        "mean_p": mean_p,
        "var_x": mean_x2 - mean_x**2,
        "var_p": mean_p2 - mean_p**2,
    }


def verify_canonical_moments(spec: CheckSpec | None = None) -> VerificationReport:
    spec = spec or DEFAULT_CHECKS["canonical-moments"]

    def evaluate(pt):
        z = complex(pt["z_re"], pt["z_im"])
        mom = canonical_moments(z)
        yield mom["norm"], 1.0
        yield mom["mean_x"], math.sqrt(2.0) * z.real
        yield mom["mean_p"], math.sqrt(2.0) * z.imag
        yield mom["var_x"], 0.5
        yield mom["var_p"], 0.5

    return _run(spec, spec.expand(), evaluate)


def verify_hermite_integral(spec: CheckSpec | None = None) -> VerificationReport:
    """Closed Hermite product integral vs quadrature.

    Points carry either real shifts ``alpha, gamma`` or a plane label
    ``(beta, x, y)`` mapped to the complex shifts of the Landau problem.
    """
    spec = spec or DEFAULT_CHECKS["hermite-integral"]

    def evaluate(pt):
        if "alpha" in pt:
            alpha, gamma = pt["alpha"], pt["gamma"]
        else:
            alpha, gamma = co.hermite_integral_shifts(pt["beta"], pt["x"], pt["y"])
        args = co.HermiteIntegralArgs(pt["s"], pt["l"], alpha, gamma)
        yield co.hermite_product_integral(args), co.hermite_product_integral_quad(args)

    return _run(spec, spec.expand(), evaluate)


# ----------------------------------------------------------------- registry

_DEG = tuple(range(9))


def _hermite_integral_points() -> tuple[Point, ...]:
    real = [
        {"s": s, "l": l, "alpha": a, "gamma": g}
        for s in _DEG
        for l in _DEG
        for a in (-1.0, -0.3, 0.0, 0.5, 1.1)
        for g in (-1.0, -0.3, 0.0, 0.5, 1.1)
    ]
    cplx = [
        {"s": s, "l": l, "beta": b, "x": x, "y": y}
        for s in _DEG
        for l in _DEG
        for b in _BETAS
        for x, y in ((1.0, 1.0), (0.7, -0.4), (-1.2, 0.3), (0.0, 1.0))
    ]
    return tuple(real + cplx)


_KERNEL_PTS = ((0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (-1.0, 0.7), (1.2, -0.4), (2.0, 1.0), (-2.5, -1.5))
_Z = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-0.5, 0.8), (2.0, -1.0))

DEFAULT_CHECKS: dict[str, CheckSpec] = {
    "genfun": CheckSpec(
        "genfun",
        grid={"beta": _BETAS, "m": tuple(range(6)), "a": _AB, "b": _AB, "xi": _XIS},
        tolerance=1e-8,
    ),
    "genfun-reduction": CheckSpec(
        "genfun-reduction",
        grid={"tau": (-1.0, 0.25, 1.0), "beta": _BETAS, "xi": _XIS},
        tolerance=1e-10,
    ),
    "state-equivalence": CheckSpec(
        "state-equivalence",
        grid={"beta": _BETAS, "m": tuple(range(6)), "x": _AB, "y": _AB, "xi": _XIS},
        tolerance=1e-8,
    ),
    "kernel": CheckSpec(
        "kernel",
        grid={"beta": _BETAS, "m": tuple(range(6)), "r": _KERNEL_PTS, "r2": _KERNEL_PTS},
        tolerance=1e-10,
        metric="abs",
        options={"max_beta_dist2": 10.0},
    ),
    "kernel-diagonal": CheckSpec(
        "kernel-diagonal",
        grid={"beta": _BETAS + (0.37, 3.5), "m": tuple(range(6)), "r": _KERNEL_PTS},
        tolerance=4.5e-16,
        metric="rel",
    ),
    "orthonormality": CheckSpec(
        "orthonormality",
        grid={"beta": _BETAS, "m": tuple(range(5))},
        tolerance=1e-8,
        metric="abs",
        options={"count": 10, "radial_order": 24, "angular_order": 24},
    ),
    "resolution-identity": CheckSpec(
        "resolution-identity",
        grid={"beta": _BETAS, "m": (0, 1, 2), "psi": tuple(range(6))},
        tolerance=1e-4,
        metric="abs",
        options={"radial_order": 30, "angular_order": 8, "inner_order": 100},
    ),
    "canonical-series": CheckSpec(
        "canonical-series",
        grid={"z_re": (0.0, 1.0, -0.5, 2.0), "z_im": (0.0, 1.0, 0.8, -1.0), "xi": tuple(np.arange(-4.0, 4.25, 0.5).tolist())},
        tolerance=1e-10,
        options={"random_xi": 5},
    ),
    "canonical-moments": CheckSpec(
        "canonical-moments",
        points=tuple({"z_re": a, "z_im": b} for a, b in _Z),
        tolerance=1e-8,
        metric="abs",
    ),
    "hermite-integral": CheckSpec(
        "hermite-integral",
        points=_hermite_integral_points(),
        tolerance=1e-8,
    ),
}

CHECKS: dict[str, Callable[[CheckSpec | None], VerificationReport]] = {
    "genfun": verify_genfun,
    "genfun-reduction": verify_genfun_reduction,
    "state-equivalence": verify_state_equivalence,
    "kernel": verify_kernel,
    "kernel-diagonal": verify_kernel_diagonal,
    "orthonormality": verify_orthonormality,
    "resolution-identity": verify_resolution_identity,
    "canonical-series": verify_canonical_series,
    "canonical-moments": verify_canonical_moments,
    "hermite-integral": verify_hermite_integral,
}


def run_check(name: str, spec: CheckSpec | None = None) -> VerificationReport:
    return CHECKS[name](spec or DEFAULT_CHECKS[name])


def run_all(tolerance: float | None = None, seed: int | None = None) -> list[VerificationReport]:
    return [run_check(n, DEFAULT_CHECKS[n].with_overrides(tolerance, seed)) for n in CHECKS]
