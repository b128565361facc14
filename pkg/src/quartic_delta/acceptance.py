"""The acceptance criteria as runnable checks, each with its tolerance and time budget."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import bounds, count, delta, local
from .expsums import checks
from .expsums.archimedean import poisson_check
from .poly import IntPolynomial, difference
from .weights import WeightSpec

# coefficient tuples (Z, alpha, 1) of the exponent families at n = 30, as printed
GOLDEN_N30: dict[str, tuple[Fraction, Fraction, Fraction]] = {
    "h2": (Fraction(-145, 186), Fraction(-1687, 372), Fraction(209, 310)),
    "w2": (Fraction(889, 372), Fraction(239, 372), Fraction(-1759, 620)),
    "h1(0)": (Fraction(-115, 78), Fraction(-15329, 4524), Fraction(5943, 3770)),
    "h1(n-2)": (Fraction(-23, 234), Fraction(101, 13572), Fraction(133, 11310)),
    "w1": (Fraction(49, 39), Fraction(98, 39), Fraction(-71, 52)),
    "h3(0)": (Fraction(-145, 186), Fraction(-49403, 10788), Fraction(6141, 8990)),
    "h3(n-2)": (Fraction(-29, 558), Fraction(-2329, 32364), Fraction(-1289, 26970)),
    "w3": (Fraction(889, 372), Fraction(53, 93), Fraction(-175, 62)),
}

DEMO_FORM = IntPolynomial.diagonal([1, 1, 1, -1, -1, -1])
DEMO_WEIGHT = WeightSpec((Fraction(1, 2),) * 6)
NONSINGULAR_30 = IntPolynomial.diagonal([1] * 15 + [-1] * 15)
SERIES_LADDER = (25, 50, 100, 200)
GROWTH_LADDER = (10, 15, 20, 30, 40)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    budget: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.elapsed:.2f}s / {self.budget:.0f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "elapsed": self.elapsed,
            "budget": self.budget,
            "details": self.details,
        }


def _timed(number: int, title: str, budget: float, body: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t = time.perf_counter()
    ok, details = body()
    el = time.perf_counter() - t
    details["within_budget"] = el < budget
    return CriterionResult(number, title, bool(ok and el < budget), el, budget, details)


def criterion_1() -> CriterionResult:
    def body():
        cases = bounds.optimisation_cases(30)
        return all(c.passed for c in cases.values()), {k: c.to_json() for k, c in cases.items()}

    return _timed(1, "exact max-min verdicts at n = 30", 1.0, body)


def criterion_2() -> CriterionResult:
    def body():
        got = {k: bounds.family_by_key(k, 30).as_tuple() for k in GOLDEN_N30}
        mism = {k: [str(x) for x in got[k]] for k in GOLDEN_N30 if got[k] != GOLDEN_N30[k]}
        return not mism, {"mismatches": mism, "checked": list(GOLDEN_N30)}

    return _timed(2, "n = 30 coefficient tuples reproduced exactly", 1.0, body)


def criterion_3(Qs=(5, 10, 20), tol: float = 1e-2) -> CriterionResult:
    def body():
        errs = {Q: delta.verify_delta(Q).max_error for Q in Qs}
        ok = all(e <= tol for e in errs.values()) and errs[Qs[-1]] <= errs[Qs[0]] / 2
        return ok, {"max_error": {str(Q): e for Q, e in errs.items()}, "tol": tol}

    return _timed(3, "delta symbol reproduces delta_0(n) for |n| <= Q^2", 120.0, body)


def criterion_4(trials: int = 200, seed: int = 7, tol: float = 1e-9) -> CriterionResult:
    def body():
        rep = checks.multiplicativity_suite(trials, seed, tol)
        z = checks.z_table_check(50)
        return rep.passed and z["passed"], {"multiplicativity": rep.to_json(), "z_table": z}

    return _timed(4, "multiplicativity of complete sums and the Z table", 60.0, body)


POISSON_F = IntPolynomial.diagonal([1, -2])
POISSON_W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
POISSON_H = (1, 2)
POISSON_P = 20
POISSON_Z = (2e-6, -5e-6)


def criterion_5(tol: float = 1e-3) -> CriterionResult:
    def body():
        g = difference(POISSON_F, POISSON_H)
        w = POISSON_W.differenced(POISSON_H, POISSON_P)
        reps = [poisson_check(POISSON_F, g, w, POISSON_P, q, 1, z) for q in (3, 4, 5) for z in POISSON_Z]
        return all(r.rel_error <= tol for r in reps), {"instances": [r.to_json() for r in reps], "tol": tol}

    return _timed(5, "Poisson summation for the differenced sums", 300.0, body)


def criterion_6() -> CriterionResult:
    from .arith import primes_upto

    def body():
        weil = {p: checks.weil_cubic_check(p) for p in primes_upto(101)}
        reps = checks.prime_bound_suite()
        worst = max(r.max_ratio for r in reps if r.skipped is None)
        ok = max(weil.values()) <= 1.0 and worst <= 8.0
        return ok, {
            "weil_max_ratio": max(weil.values()),
            "prime_bound_max_ratio": worst,
            "prime_bound_instances": len(reps),
            "prime_bound": [r.to_json() for r in reps],
        }

    return _timed(6, "square-root cancellation at primes", 600.0, body)


OVERLAP_INSTANCES = (
    ((1, 1, -1, -1), 10),
    ((1, 1, -1, -1), 6),
    ((1, 2, -3), 12),
    ((1, 1, 1, -1, -1, -1), 4),
    ((1, 1, 1, -1, -1, -1), 6),
    ((1, 2, 3, -6, -1), 5),
    ((1, 1, -2, 1, -1), 6),
)


def criterion_7(lo: float = 1.7, hi: float = 2.3) -> CriterionResult:
    def body():
        overlap = []
        for coeffs, P in OVERLAP_INSTANCES:
            F = IntPolynomial.diagonal(coeffs)
            a = count.count_projective(F, P, "direct").count
            b = count.count_projective(F, P, "meet-in-middle").count
            overlap.append({"coeffs": list(coeffs), "P": P, "direct": a, "mitm": b, "equal": a == b})
        fit = count.growth_fit(DEMO_FORM, GROWTH_LADDER)
        ok = all(o["equal"] for o in overlap) and lo <= fit.slope <= hi
        return ok, {"overlap": overlap, "growth": fit.to_json(), "window": [lo, hi]}

    return _timed(7, "exact counts agree and growth exponent is n - 4", 600.0, body)


def criterion_8(P: int = 40, tol: float = 0.25) -> CriterionResult:
    def body():
        S = local.singular_series(DEMO_FORM, 200, "diagonal-fast").value
        I = local.singular_integral(DEMO_FORM, DEMO_WEIGHT, 50).value
        main = local.main_term(S, I, P, DEMO_FORM.n_vars)
        N = count.count_smoothed(DEMO_FORM, DEMO_WEIGHT, P)
        rel = abs(main - N) / N
        return rel <= tol, {"series": S, "integral": I, "main_term": main, "smoothed_count": N, "rel_diff": rel, "tol": tol}

    return _timed(8, "main term matches the smoothed count at P = 40", 900.0, body)


def criterion_9() -> CriterionResult:
    def body():
        reps = {
            "demo_n6": local.convergence_probe(DEMO_FORM, SERIES_LADDER),
            "nonsingular_n30": local.convergence_probe(NONSINGULAR_30, SERIES_LADDER),
        }
        return all(r.psi_hat > 0 for r in reps.values()), {k: r.to_json() for k, r in reps.items()}

    return _timed(9, "singular series partial sums converge", 60.0, body)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(selected=None) -> list[CriterionResult]:
    return [CRITERIA[k]() for k in sorted(selected or CRITERIA)]
