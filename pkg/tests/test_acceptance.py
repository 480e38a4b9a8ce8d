"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` to see the lines.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from landau_cs.coherent import GroupElement, act, heisenberg_mul, reference_state
from landau_cs.landau import LandauParams, PlaneLabel, kernel_closed
from landau_cs.specfun import hermite_eval, hermite_sequence, laguerre_eval
from landau_cs.verify import DEFAULT_CHECKS, run_check

from oracles import hermite_rodrigues_table, laguerre_exact


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return emit


def timed(name):
    t0 = time.perf_counter()
    rep = run_check(name)
    return rep, time.perf_counter() - t0


def test_criterion_1_generating_function(report):
    rep, dt = timed("genfun")
    spec = DEFAULT_CHECKS["genfun"]
    grid = spec.grid
    covered = (
        grid["m"] == tuple(range(6))
        and grid["beta"] == (0.5, 1.0, 2.0)
        and grid["a"] == grid["b"] == (-1.0, -0.3, 0.0, 0.4, 1.2)
        and grid["xi"] == (-2.0, 0.0, 0.7, 3.0)
    )
    ok = rep.passed and covered and spec.metric == "mixed" and rep.tolerance == 1e-8 and dt <= 10.0
    report("1 generating function", ok, f"{len(rep.grid)} points, worst mixed {rep.worst_metric_err:.2e} <= 1e-8, {dt:.2f}s <= 10s")


def test_criterion_2_reduction(report):
    rep, _ = timed("genfun-reduction")
    ok = rep.passed and rep.tolerance == 1e-10 and DEFAULT_CHECKS["genfun-reduction"].grid["tau"] == (-1.0, 0.25, 1.0)
    report("2 classical reduction", ok, f"worst mixed {rep.worst_metric_err:.2e} <= 1e-10")


def test_criterion_3_state_equivalence(report):
    rep, dt = timed("state-equivalence")
    ok = rep.passed and rep.tolerance == 1e-8 and dt <= 10.0 and len(rep.grid) == 3 * 6 * 5 * 5 * 4
    report("3 Iwata = Perelomov", ok, f"{len(rep.grid)} points, worst mixed {rep.worst_metric_err:.2e} <= 1e-8, {dt:.2f}s <= 10s")


def test_criterion_4_kernel(report):
    rep, _ = timed("kernel")
    diag, _ = timed("kernel-diagonal")
    # 1 ulp-scale: within a couple of rounding units of beta/2pi
    ulp = max(math.ulp(b / (2 * math.pi)) / (b / (2 * math.pi)) for b in DEFAULT_CHECKS["kernel-diagonal"].grid["beta"])
    ok = rep.passed and rep.tolerance == 1e-10 and diag.passed and diag.worst_rel_err <= 2 * ulp
    report(
        "4 kernel series = closed form",
        ok,
        f"off-diagonal worst {rep.worst_abs_err:.2e} <= 1e-10; diagonal rel {diag.worst_rel_err:.1e}",
    )


def test_criterion_4_hermitian_and_positive():
    p = LandauParams(1.3, 4)
    r, s = PlaneLabel(0.4, -1.1), PlaneLabel(-0.9, 0.2)
    assert abs(kernel_closed(p, r, s) - kernel_closed(p, s, r).conjugate()) <= 1e-15
    assert kernel_closed(p, r, r).real > 0


def test_criterion_5_orthonormality(report):
    rep, dt = timed("orthonormality")
    spec = DEFAULT_CHECKS["orthonormality"]
    ok = rep.passed and spec.options["count"] == 10 and max(spec.grid["m"]) == 4 and dt <= 5.0
    report("5 orthonormality", ok, f"max |G - I| {rep.worst_abs_err:.2e} <= 1e-8, {dt:.2f}s <= 5s")


def test_criterion_6_resolution_of_identity(report):
    rep, dt = timed("resolution-identity")
    grid = DEFAULT_CHECKS["resolution-identity"].grid
    covered = grid["psi"] == tuple(range(6)) and grid["m"] == (0, 1, 2) and grid["beta"] == (0.5, 1.0, 2.0)
    ok = rep.passed and covered and rep.tolerance == 1e-4 and dt <= 60.0
    report("6 resolution of identity", ok, f"worst |I - 1| {rep.worst_abs_err:.2e} <= 1e-4, {dt:.2f}s <= 60s")


def test_criterion_7_hermite_product(report):
    rep, _ = timed("hermite-integral")
    pts = rep.grid
    has_real = any("alpha" in p for p in pts)
    has_complex = any("beta" in p for p in pts)
    degs = max(max(p["s"], p["l"]) for p in pts)
    ok = rep.passed and has_real and has_complex and degs == 8 and rep.tolerance == 1e-8
    report("7 Hermite product integral", ok, f"{len(pts)} points, worst mixed {rep.worst_metric_err:.2e} <= 1e-8")


def test_criterion_8_canonical(report):
    series, _ = timed("canonical-series")
    moments, _ = timed("canonical-moments")
    ok = series.passed and series.tolerance == 1e-10 and moments.passed and moments.tolerance == 1e-8
    report(
        "8 canonical states",
        ok,
        f"series vs closed {series.worst_metric_err:.2e} <= 1e-10; moments {moments.worst_abs_err:.2e} <= 1e-8",
    )


def _property_suites():
    problems = []
    xis = [Fraction(v) for v in ("-3.5", "-1.25", "-0.3", "0", "0.7", "2", "4.25")]
    # recurrence residual
    for xi in map(float, xis):
        h = hermite_sequence(51, xi)
        for n in range(1, 51):
            scale = max(abs(h[n + 1]), abs(2 * xi * h[n]), abs(2 * n * h[n - 1]), 1e-300)
            if abs(h[n + 1] - 2 * xi * h[n] + 2 * n * h[n - 1]) > 1e-10 * scale:
                problems.append(f"recurrence n={n} xi={xi}")
    # parity, exact
    for n in range(51):
        for xi in map(float, xis):
            if hermite_eval(n, -xi) != (-1) ** n * hermite_eval(n, xi):
                problems.append(f"parity n={n} xi={xi}")
    # Rodrigues form, evaluated exactly
    for n, coeffs in enumerate(hermite_rodrigues_table(50)):
        for xi in xis:
            exact = float(sum(c * xi**j for j, c in enumerate(coeffs)))
            if not math.isclose(hermite_eval(n, float(xi)), exact, rel_tol=1e-12, abs_tol=1e-300):
                problems.append(f"rodrigues n={n} xi={xi}")
    # negative-index Laguerre transform vs the direct sum
    for m in range(9):
        for k in range(-m, 0):
            for x in ("0", "0.3", "1.7", "4", "9.5"):
                exact = float(laguerre_exact(m, k, Fraction(x)))
                got = laguerre_eval(m, k, float(x))
                if abs(got - exact) > 1e-10 * max(1.0, abs(exact)):
                    problems.append(f"laguerre m={m} k={k} x={x}")
    # group action composition
    rng = np.random.default_rng(5)
    for _ in range(200):
        g1, g2 = (GroupElement(*rng.uniform(-1.5, 1.5, 3)) for _ in range(2))
        beta = float(rng.choice([0.5, 1.0, 2.0]))
        psi = reference_state(int(rng.integers(0, 5)))
        xi = float(rng.uniform(-3, 3))
        lhs = act(beta, g1, act(beta, g2, psi))(xi)
        rhs = act(beta, heisenberg_mul(g1, g2), psi)(xi)
        if abs(lhs - rhs) > 1e-12:
            problems.append(f"composition {g1} {g2}")
    return problems


def test_criterion_9_property_suites(report):
    problems = _property_suites()
    report("9 property suites", not problems, "all green" if not problems else "; ".join(problems[:5]))
