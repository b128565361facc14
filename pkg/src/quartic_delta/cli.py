"""Batch front end: one subcommand per module, JSON reports, fixed exit codes.

Exit status: 0 when every asserted check passes, 1 when a check fails,
2 on malformed input, 3 when a size guard refuses the computation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__, acceptance, bounds, count, delta, local
from .errors import GuardError
from .expsums import checks, complete
from .poly import IntPolynomial, parse_polynomial
from .weights import WeightSpec

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    report: Path | None = None
    csv: Path | None = None

    def canonical(self) -> str:
        return json.dumps({"subcommand": self.subcommand, "params": self.params}, sort_keys=True, default=str)

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


# ---------------------------------------------------------------------------
# input parsing


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational: {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"not a comma separated integer list: {text!r}") from exc


def load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {path}: {exc}") from exc


def load_form(path: str) -> IntPolynomial:
    """A polynomial JSON file, or an inline expression such as ``x1^4 - x2^4``."""
    if not Path(path).is_file() and not path.endswith(".json"):
        try:
            return parse_polynomial(path)
        except Exception as exc:  # sympy raises a zoo of error types
            raise ConfigError(f"cannot parse polynomial {path!r}: {exc}") from exc
    try:
        return IntPolynomial.from_json(load_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"malformed polynomial in {path}: {exc}") from exc


def load_weight(spec: str | None, n: int) -> WeightSpec:
    """A weight file path, or a comma separated centre x0 (rationals) with rho = 1/4."""
    if spec is None:
        return WeightSpec((Fraction(1, 2),) * n)
    try:
        if Path(spec).is_file():
            w = WeightSpec.from_json(load_json(spec))
        else:
            w = WeightSpec(tuple(parse_rational(t) for t in spec.split(",")))
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"malformed weight {spec!r}: {exc}") from exc
    if w.n_vars != n:
        raise ConfigError(f"weight has {w.n_vars} coordinates, form has {n} variables")
    return w


# ---------------------------------------------------------------------------
# subcommands; each returns (passed, payload)


def _cmd_verify_delta(a: argparse.Namespace) -> tuple[bool, dict]:
    rep = delta.verify_delta(a.Q, float(parse_rational(a.theta)), a.nmax, a.cq_mode, a.route)
    out = rep.to_json()
    out["tol"] = a.tol
    out["table"] = [{"n": n, "error": e} for n, e in zip(range(-rep.n_max, rep.n_max + 1), rep.errors)]
    return rep.max_error <= a.tol, out


def _cmd_expsum_T(a: argparse.Namespace) -> tuple[bool, dict]:
    f, g = load_form(a.f), load_form(a.g)
    v = parse_int_list(a.v)
    if len(v) != f.n_vars:
        raise ConfigError("v must have one entry per variable")
    val = complete.T_complete(a.q, f, g, v)
    out = {"q": a.q, "v": v, "T": [val.real, val.imag], "abs": abs(val)}
    ok = True
    if a.check:
        ref = complete.T_complete_direct(a.q, f, g, v)
        out["direct"] = [ref.real, ref.imag]
        out["rel_error"] = checks.relative_error(val, ref)
        ok = out["rel_error"] <= 1e-9
    return ok, out


def _cmd_expsum_mult(a: argparse.Namespace) -> tuple[bool, dict]:
    rep = checks.multiplicativity_suite(a.trials, a.seed, a.tol)
    return rep.passed, rep.to_json()


def _cmd_singular_series(a: argparse.Namespace) -> tuple[bool, dict]:
    F = load_form(a.form)
    s = local.singular_series(F, a.R, a.mode)
    out: dict[str, Any] = {"series": s.to_json()}
    ok = True
    if a.ladder:
        rep = local.convergence_probe(F, parse_int_list(a.ladder), a.mode)
        out["convergence"] = rep.to_json()
        out["table"] = [{"R": R, "partial": v} for R, v in zip(rep.ladder, rep.values)]
        ok = rep.psi_hat > 0
    return ok, out


def _cmd_singular_integral(a: argparse.Namespace) -> tuple[bool, dict]:
    F = load_form(a.form)
    W = load_weight(a.weight, F.n_vars)
    s = local.singular_integral(F, W, a.R, a.tol)
    return True, {"weight": W.to_json(), "integral": s.to_json()}


def _cmd_count(a: argparse.Namespace) -> tuple[bool, dict]:
    F = load_form(a.form)
    if a.weight is not None:
        W = load_weight(a.weight, F.n_vars)
        method = "direct" if a.method == "direct" else "auto"
        return True, {"P": a.P, "weight": W.to_json(), "smoothed_count": count.count_smoothed(F, W, a.P, method)}
    out: dict[str, Any] = {"result": count.count_projective(F, a.P, a.method).to_json()}
    if a.ladder:
        fit = count.growth_fit(F, parse_int_list(a.ladder), a.method)
        out["growth"] = fit.to_json()
        out["table"] = [{"P": P, "count": c} for P, c in zip(fit.ladder, fit.counts)]
    return True, out


OPT_CASES = {
    "range1": ("range1",),
    "range2": ("range2_eta0", "range2_eta_n-2"),
    "range3": ("range3_eta0", "range3_eta_n-2"),
    "appendix": ("range1", "range2_eta0", "range2_eta_n-2", "range3_eta0", "range3_eta_n-2"),
}


def _cmd_optimize(a: argparse.Namespace) -> tuple[bool, dict]:
    if a.case == "range4":
        rep = bounds.minor_arc_scan(a.n, a.denominator)
        vals = [(c.cases["range4"], c) for c in rep.cells if "range4" in c.cases]
        worst = max(vals, key=lambda t: (t[0], t[1].Z, t[1].alpha)) if vals else None
        out = {"n": a.n, "cells": len(vals), "scan": rep.to_json()}
        if worst is not None:
            out["max"] = str(worst[0])
            out["argmax"] = [str(worst[1].Z), str(worst[1].alpha)]
        return all(v < 0 for v, _ in vals), out
    cases = bounds.optimisation_cases(a.n)
    sel = {k: cases[k] for k in OPT_CASES[a.case]}
    return all(c.passed for c in sel.values()), {"n": a.n, "cases": {k: c.to_json() for k, c in sel.items()}}


def _cmd_accept(a: argparse.Namespace) -> tuple[bool, dict]:
    sel = parse_int_list(a.only) if a.only else None
    results = []
    for r in acceptance.run_all(sel):
        print(r.line(), file=sys.stderr)
        results.append(r)
    return all(r.passed for r in results), {"criteria": [r.to_json() for r in results]}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quartic-delta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp: argparse.ArgumentParser, fn: Callable) -> None:
        sp.add_argument("--report", help="write the JSON report here (default stdout)")
        sp.add_argument("--csv", help="write the report's table as CSV")
        sp.set_defaults(fn=fn)

    s = sub.add_parser("verify-delta", help="delta_approx against delta_0 for |n| <= nmax")
    s.add_argument("--Q", type=int, required=True)
    s.add_argument("--theta", default="9/10")
    s.add_argument("--nmax", type=int)
    s.add_argument("--cq-mode", choices=("exact", "one"), default="exact")
    s.add_argument("--route", choices=("tabulated", "fubini"), default="tabulated")
    s.add_argument("--tol", type=float, default=1e-2)
    common(s, _cmd_verify_delta)

    e = sub.add_parser("expsum", help="complete exponential sums")
    esub = e.add_subparsers(dest="action", required=True)
    t = esub.add_parser("T", help="T(q, v) for a pair f, g")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--f", required=True)
    t.add_argument("--g", required=True)
    t.add_argument("--v", required=True)
    t.add_argument("--check", action="store_true", help="compare with direct summation")
    common(t, _cmd_expsum_T)
    m = esub.add_parser("check-mult", help="seeded multiplicativity suite")
    m.add_argument("--trials", type=int, default=200)
    m.add_argument("--seed", type=int, default=7)
    m.add_argument("--tol", type=float, default=1e-9)
    common(m, _cmd_expsum_mult)

    s = sub.add_parser("singular-series", help="truncated singular series")
    s.add_argument("--form", required=True)
    s.add_argument("--R", type=int, required=True)
    s.add_argument("--mode", choices=("generic", "diagonal-fast"), default="generic")
    s.add_argument("--ladder")
    common(s, _cmd_singular_series)

    s = sub.add_parser("singular-integral", help="truncated singular integral")
    s.add_argument("--form", required=True)
    s.add_argument("--weight", help="weight JSON file or comma separated centre")
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--tol", type=float, default=1e-8)
    common(s, _cmd_singular_integral)

    s = sub.add_parser("count", help="projective or smoothed solution counts")
    s.add_argument("--form", required=True)
    s.add_argument("--P", type=int, required=True)
    s.add_argument("--method", choices=count.METHODS, default="auto")
    s.add_argument("--weight", help="count with this smooth weight instead of the box")
    s.add_argument("--ladder", help="also fit the growth exponent over these P")
    common(s, _cmd_count)

    s = sub.add_parser("optimize", help="exact max-min verdicts of the exponent calculus")
    s.add_argument("--case", choices=(*OPT_CASES, "range4"), required=True)
    s.add_argument("--n", type=int, default=30)
    s.add_argument("--denominator", type=int, default=32, help="grid denominator for range4")
    common(s, _cmd_optimize)

    s = sub.add_parser("accept", help="run the acceptance criteria")
    s.add_argument("--only", help="comma separated criterion numbers")
    common(s, _cmd_accept)
    return p


def _config(a: argparse.Namespace) -> RunConfig:
    skip = {"fn", "report", "csv", "subcommand"}
    params = {k: v for k, v in sorted(vars(a).items()) if k not in skip}
    return RunConfig(a.subcommand, params, Path(a.report) if a.report else None, Path(a.csv) if a.csv else None)


def _write_csv(path: Path, rows: Sequence[dict]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    cfg = _config(a)
    t0 = time.perf_counter()
    try:
        passed, payload = a.fn(a)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    table = payload.pop("table", None)
    report = {
        "config": json.loads(cfg.canonical()),
        "config_hash": cfg.hash,
        "version": __version__,
        "passed": passed,
        "result": payload,
        "elapsed": time.perf_counter() - t0,
    }
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if cfg.report:
        cfg.report.write_text(text + "\n")
    else:
        print(text)
    if cfg.csv and table:
        _write_csv(cfg.csv, table)
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
