"""Command-line front end: ``eval``, ``verify``, ``sweep`` and ``--list``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import coherent as co
from . import landau as ld
from . import specfun as sf
from .quadrature import gauss_hermite_rule
from .series import NonConvergence, SeriesResult, TruncationPolicy
from .verify import CHECKS, DEFAULT_CHECKS, canonical_moments, run_check


class UsageError(Exception):
    pass


class EvaluationFailed(Exception):
    """Valid request whose series did not converge; exit status 1."""


# ------------------------------------------------------------- formatting


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def to_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits and complex as ``{re, im}``.

    Non-finite floats become ``null``.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "tolist"):
        return to_json(obj.tolist(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def fmt_pretty(v: Any) -> str:
    if isinstance(v, complex):
        if v.imag == 0:
            return fmt_float(v.real)
        sign = "+" if v.imag >= 0 or math.isnan(v.imag) else "-"
        return f"{fmt_float(v.real)}{sign}{fmt_float(abs(v.imag))}j"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(fmt_pretty(x) for x in v)
    return str(v)


def _flatten(name: str, v: Any) -> dict[str, Any]:
    if isinstance(v, complex):
        return {f"{name}_re": v.real, f"{name}_im": v.imag}
    if isinstance(v, (list, tuple)):
        out: dict[str, Any] = {}
        for i, x in enumerate(v):
            out.update(_flatten(f"{name}_{i}", x))
        return out
    return {name: v}


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


# ---------------------------------------------------------------- targets


def _parse_point(s: str) -> tuple[float, ...]:
    try:
        return tuple(float(c) for c in s.split(","))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {s!r}") from exc


def _parse_complex(s: str) -> complex:
    s = s.replace(" ", "")
    if "," in s:
        re_, im_ = _parse_point(s)
        return complex(re_, im_)
    return complex(s.replace("i", "j"))


PARSERS: dict[str, Callable[[str], Any]] = {
    "int": int,
    "float": float,
    "complex": _parse_complex,
    "point": _parse_point,
}


@dataclass(frozen=True)
class Param:
    name: str
    kind: str = "float"
    default: Any = None

    @property
    def flag(self) -> str:
        return "--" + self.name.replace("_", "-")


@dataclass(frozen=True)
class Target:
    name: str
    ref: str
    params: tuple[Param, ...]
    fn: Callable[..., dict[str, Any]] = field(compare=False)

    def schema(self) -> str:
        parts = []
        for p in self.params:
            opt = f" (default {p.default})" if p.default is not None else ""
            parts.append(f"{p.flag} <{p.kind}>{opt}")
        return " ".join(parts)


def _series(r: SeriesResult) -> dict[str, Any]:
    return {"value": complex(r.value), "terms_used": r.terms_used, "tail_estimate": r.tail_estimate}


def _pol() -> TruncationPolicy:
    return TruncationPolicy.from_env()


def _genfun_params(beta, m, a, b, xi):
    return co.GenFunParams(beta, m, a, b, xi)


def _genfun_both(beta, m, a, b, xi):
    g = _genfun_params(beta, m, a, b, xi)
    lhs = co.genfun_lhs(g, _pol())
    rhs = co.genfun_rhs(g)
    return {"lhs": complex(lhs.value), "rhs": rhs, "abs_err": abs(lhs.value - rhs), "terms_used": lhs.terms_used}


def _target_list() -> list[Target]:
    P = Param
    L = ld.LandauParams
    PL = ld.PlaneLabel
    return [
        Target("hermite", "Hermite polynomial H_n", (P("n", "int"), P("xi")), lambda n, xi: {"value": sf.hermite_eval(n, xi)}),
        Target(
            "hermite-sequence", "H_0..H_n in one recurrence pass", (P("n_max", "int"), P("xi")),
            lambda n_max, xi: {"values": sf.hermite_sequence(n_max, xi)},
        ),
        Target(
            "hermite-gaussian", "normalized Hermite function phi_n", (P("n", "int"), P("xi")),
            lambda n, xi: {"value": co.hermite_gaussian(n, xi)},
        ),
        Target(
            "laguerre", "Laguerre L_m^(k), k >= -m", (P("m", "int"), P("k", "int"), P("x")),
            lambda m, k, x: {"value": sf.laguerre_eval(m, k, x)},
        ),
        Target(
            "log-factorial-ratio", "ln(p!/q!)", (P("p", "int"), P("q", "int")),
            lambda p, q: {"value": sf.log_factorial_ratio(p, q)},
        ),
        Target(
            "gauss-hermite", "Gauss-Hermite nodes/weights", (P("order", "int"),),
            lambda order: {"nodes": list(gauss_hermite_rule(order).nodes), "weights": list(gauss_hermite_rule(order).weights)},
        ),
        Target(
            "landau-energy", "Landau level energy (m+1/2) beta", (P("beta"), P("m", "int")),
            lambda beta, m: {"value": ld.landau_energy(L(beta, m))},
        ),
        Target(
            "basis-fn", "Landau eigenbasis phi_k^(beta,m)", (P("beta"), P("m", "int"), P("k", "int"), P("pt", "point")),
            lambda beta, m, k, pt: {"value": ld.basis_fn(L(beta, m), k, PL(*pt))},
        ),
        Target(
            "kernel-closed", "reproducing kernel, closed form", (P("beta"), P("m", "int"), P("r", "point"), P("r2", "point")),
            lambda beta, m, r, r2: {"value": ld.kernel_closed(L(beta, m), PL(*r), PL(*r2))},
        ),
        Target(
            "kernel-series", "reproducing kernel, basis series", (P("beta"), P("m", "int"), P("r", "point"), P("r2", "point")),
            lambda beta, m, r, r2: _series(ld.kernel_series(L(beta, m), PL(*r), PL(*r2), _pol())),
        ),
        Target(
            "heisenberg-mul", "Heisenberg group product", (P("g1", "point"), P("g2", "point")),
            lambda g1, g2: {"value": list(vars(co.heisenberg_mul(co.GroupElement(*g1), co.GroupElement(*g2))).values())},
        ),
        Target(
            "schrodinger-action", "Schrodinger representation on phi_n",
            (P("beta"), P("g", "point"), P("n", "int", 0), P("xi")),
            lambda beta, g, n, xi: {"value": co.schrodinger_action(beta, co.GroupElement(*g), co.reference_state(n), xi)},
        ),
        Target(
            "perelomov", "Perelomov coherent state", (P("beta"), P("m", "int"), P("x"), P("y"), P("xi")),
            lambda beta, m, x, y, xi: {"value": co.perelomov_state(L(beta, m), PL(x, y), xi)},
        ),
        Target(
            "iwata", "Iwata coherent state series", (P("beta"), P("m", "int"), P("x"), P("y"), P("xi")),
            lambda beta, m, x, y, xi: _series(co.iwata_state(L(beta, m), PL(x, y), xi, _pol())),
        ),
        Target(
            "iwata-integrals", "Iwata series via Hermite integrals",
            (P("beta"), P("m", "int"), P("x"), P("y"), P("xi")),
            lambda beta, m, x, y, xi: _series(co.iwata_state_via_integrals(L(beta, m), PL(x, y), xi, _pol())),
        ),
        Target(
            "cs-transform", "coherent state transform of phi_n",
            (P("beta"), P("m", "int"), P("x"), P("y"), P("n", "int")),
            lambda beta, m, x, y, n: {"value": co.coherent_state_transform(L(beta, m), PL(x, y), co.reference_state(n))},
        ),
        Target(
            "canonical-closed", "canonical coherent state, closed", (P("z", "complex"), P("xi")),
            lambda z, xi: {"value": co.canonical_cs_closed(z, xi)},
        ),
        Target(
            "canonical-series", "canonical coherent state, Fock series", (P("z", "complex"), P("xi")),
            lambda z, xi: _series(co.canonical_cs_series(z, xi, _pol())),
        ),
        Target("canonical-moments", "canonical state means/variances", (P("z", "complex"),), lambda z: canonical_moments(z)),
        Target(
            "genfun-lhs", "generating function, series side", (P("beta"), P("m", "int"), P("a"), P("b"), P("xi")),
            lambda beta, m, a, b, xi: _series(co.genfun_lhs(_genfun_params(beta, m, a, b, xi), _pol())),
        ),
        Target(
            "genfun-rhs", "generating function, closed side", (P("beta"), P("m", "int"), P("a"), P("b"), P("xi")),
            lambda beta, m, a, b, xi: {"value": co.genfun_rhs(_genfun_params(beta, m, a, b, xi))},
        ),
        Target("genfun", "generating function, both sides", (P("beta"), P("m", "int"), P("a"), P("b"), P("xi")), _genfun_both),
        Target(
            "hermite-integral-closed", "Hermite product integral, closed",
            (P("s", "int"), P("l", "int"), P("alpha", "complex"), P("gamma", "complex")),
            lambda s, l, alpha, gamma: {"value": co.hermite_product_integral(co.HermiteIntegralArgs(s, l, alpha, gamma))},
        ),
        Target(
            "hermite-integral-quad", "Hermite product integral, quadrature",
            (P("s", "int"), P("l", "int"), P("alpha", "complex"), P("gamma", "complex")),
            lambda s, l, alpha, gamma: {"value": co.hermite_product_integral_quad(co.HermiteIntegralArgs(s, l, alpha, gamma))},
        ),
        Target(
            "hermite-shifts", "Landau shifts (alpha, gamma)", (P("beta"), P("x"), P("y")),
            lambda beta, x, y: dict(zip(("alpha", "gamma"), co.hermite_integral_shifts(beta, x, y))),
        ),
    ]


TARGETS: dict[str, Target] = {t.name: t for t in _target_list()}


# ------------------------------------------------------------ param parsing


def parse_range(text: str, kind: str) -> list:
    """``start:stop:step``, stop included when within half a step."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be start:stop:step, got {text!r}")
    conv = int if kind == "int" else float
    start, stop, step = (conv(p) for p in parts)
    if step == 0 or (stop - start) * step < 0:
        raise ValueError(f"empty or infinite range {text!r}")
    # the last point may overshoot stop by strictly less than half a step
    n = math.ceil((stop - start) / step - 0.5)
    return [conv(start + i * step) if kind == "int" else start + i * step for i in range(n + 1)]


def _values_for(param: Param, text: str, allow_range: bool) -> list:
    if param.kind == "point":
        comps = []
        for c in text.split(","):
            if allow_range and ":" in c:
                comps.append(parse_range(c, "float"))
            else:
                comps.append([float(c)])
        return [tuple(v) for v in itertools.product(*comps)]
    if allow_range and ":" in text and param.kind in ("int", "float"):
        return parse_range(text, param.kind)
    return [PARSERS[param.kind](text)]


def parse_target_args(target: Target, argv: Sequence[str], allow_range: bool = False) -> dict[str, list]:
    known = {p.flag: p for p in target.params}
    raw: dict[str, str] = {}
    it = iter(argv)
    for tok in it:
        if "=" in tok and tok.startswith("--"):
            key, val = tok.split("=", 1)
        else:
            key = tok
            try:
                val = next(it)
            except StopIteration:
                raise UsageError(f"flag {key} needs a value; expected: {target.schema()}") from None
        if key not in known:
            raise UsageError(f"unknown flag {key} for target {target.name!r}; expected: {target.schema()}")
        raw[key] = val
    out: dict[str, list] = {}
    for p in target.params:
        if p.flag not in raw:
            if p.default is None:
                raise UsageError(f"missing flag {p.flag} for target {target.name!r}; expected: {target.schema()}")
            out[p.name] = [p.default]
            continue
        try:
            out[p.name] = _values_for(p, raw[p.flag], allow_range)
        except ValueError as exc:
            raise UsageError(f"bad value for {p.flag}: {exc}; expected: {target.schema()}") from None
        if not out[p.name]:
            raise UsageError(f"empty grid for {p.flag}")
    return out


def _call(target: Target, kwargs: dict[str, Any]) -> dict[str, Any]:
    try:
        return target.fn(**kwargs)
    except NonConvergence as exc:
        raise EvaluationFailed(f"{target.name}: {exc}") from None
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(f"{target.name}: {type(exc).__name__}: {exc}") from None


# ----------------------------------------------------------------- commands


def cmd_eval(target: Target, argv: Sequence[str], output: str) -> str:
    values = parse_target_args(target, argv)
    kwargs = {k: v[0] for k, v in values.items()}
    result = _call(target, kwargs)
    if output == "json":
        return to_json({"target": target.name, "params": kwargs, "result": result})
    if output == "csv":
        row = {k: v for name, val in kwargs.items() for k, v in _flatten(name, val).items()}
        for name, val in result.items():
            row.update(_flatten(name, val))
        return _csv([row])
    if len(result) == 1:
        return fmt_pretty(next(iter(result.values())))
    return "\n".join(f"{k} = {fmt_pretty(v)}" for k, v in result.items())


def _csv(rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r.get(h, "")) for h in header])
    return buf.getvalue().rstrip("\n")


def sweep_rows(target: Target, argv: Sequence[str]) -> list[dict[str, Any]]:
    values = parse_target_args(target, argv, allow_range=True)
    if not any(len(v) > 1 for v in values.values()) and not any(":" in a for a in argv):
        raise UsageError(f"sweep needs at least one ranged flag (start:stop:step); expected: {target.schema()}")
    keys = list(values)
    rows = []
    for combo in itertools.product(*(values[k] for k in keys)):
        kwargs = dict(zip(keys, combo))
        row: dict[str, Any] = {}
        for name, val in kwargs.items():
            row.update(_flatten(name, val))
        for name, val in _call(target, kwargs).items():
            row.update(_flatten(name, val))
        rows.append(row)
    return rows


def cmd_sweep(target: Target, argv: Sequence[str], output: str) -> str:
    rows = sweep_rows(target, argv)
    if output == "json":
        return to_json(rows)
    return _csv(rows)


def cmd_verify(name: str, output: str, tolerance: float | None, seed: int | None, timing: bool) -> tuple[str, bool]:
    names = list(CHECKS) if name == "all" else [name]
    reports = []
    for n in names:
        rep = run_check(n, DEFAULT_CHECKS[n].with_overrides(tolerance, seed))
        d = rep.to_dict()
        if not timing:
            d["runtime_ms"] = 0.0
        reports.append((rep, d))
    ok = all(r.passed for r, _ in reports)
    if output == "pretty":
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.check_name}: worst_abs={fmt_float(r.worst_abs_err)} "
            f"worst_rel={fmt_float(r.worst_rel_err)} tol={fmt_float(r.tolerance)} ({r.metric}) points={len(r.grid)}"
            for r, _ in reports
        ]
        return "\n".join(lines), ok
    if output == "csv":
        cols = ("check_name", "worst_abs_err", "worst_rel_err", "tolerance", "passed", "runtime_ms", "seed")
        return _csv([{c: d[c] for c in cols} for _, d in reports]), ok
    docs = [d for _, d in reports]
    return to_json(docs[0] if name != "all" else docs), ok


def list_targets() -> str:
    lines = ["eval/sweep targets:"]
    for t in TARGETS.values():
        lines.append(f"  {t.name:26s} {t.ref:40s} {t.schema()}")
    lines.append("verify checks:")
    for n, spec in DEFAULT_CHECKS.items():
        lines.append(f"  {n:26s} tol={spec.tolerance:g} ({spec.metric})")
    lines.append("  all")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="landau-cs", description=__doc__.splitlines()[0])
    ap.add_argument("--list", action="store_true", help="list eval/sweep targets and verify checks")
    sub = ap.add_subparsers(dest="command")

    ev = sub.add_parser("eval", help="evaluate one target at one parameter point")
    ev.add_argument("target")
    ev.add_argument("--output", choices=("pretty", "json", "csv"), default="pretty")
    ev.add_argument("params", nargs=argparse.REMAINDER)

    ve = sub.add_parser("verify", help="run a verification check (or 'all')")
    ve.add_argument("check")
    ve.add_argument("--default-grid", action="store_true", help="use the built-in grid (the only grid available)")
    ve.add_argument("--output", choices=("pretty", "json", "csv"), default="json")
    ve.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    ve.add_argument("--seed", type=int, default=None)
    ve.add_argument("--no-timing", action="store_true", help="report runtime_ms as 0 for byte-identical output")

    sw = sub.add_parser("sweep", help="evaluate a target over ranged parameters, emit CSV")
    sw.add_argument("target")
    sw.add_argument("--output", choices=("csv", "json"), default="csv")
    sw.add_argument("params", nargs=argparse.REMAINDER)
    return ap


def _split_output(params: list[str], default: str) -> tuple[list[str], str]:
    # --output may also appear after the target's own flags
    out = default
    rest: list[str] = []
    it = iter(params)
    for tok in it:
        if tok == "--output":
            out = next(it, default)
        elif tok.startswith("--output="):
            out = tok.split("=", 1)[1]
        else:
            rest.append(tok)
    return rest, out


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.list:
            print(list_targets())
            return 0
        if args.command is None:
            ap.print_usage(sys.stderr)
            return 2
        if args.command == "verify":
            if args.check != "all" and args.check not in CHECKS:
                raise UsageError(f"unknown check {args.check!r}; choose from: {', '.join(CHECKS)}, all")
            if args.tol is not None and not args.tol > 0:
                raise UsageError("--tol must be positive")
            text, ok = cmd_verify(args.check, args.output, args.tol, args.seed, not args.no_timing)
            print(text)
            return 0 if ok else 1
        if args.target not in TARGETS:
            raise UsageError(f"unknown target {args.target!r}; see --list")
        params, output = _split_output(args.params, args.output)
        if output not in (("pretty", "json", "csv") if args.command == "eval" else ("csv", "json")):
            raise UsageError(f"bad --output {output!r}")
        cmd = cmd_eval if args.command == "eval" else cmd_sweep
        print(cmd(TARGETS[args.target], params, output))
        return 0
    except UsageError as exc:
        print(f"landau-cs: error: {exc}", file=sys.stderr)
        return 2
    except EvaluationFailed as exc:
        print(f"landau-cs: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
