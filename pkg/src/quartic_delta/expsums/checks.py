"""Numerical checks of the structural facts about complete sums."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from ..arith import divisors, is_squarefree, primes_upto, factorint
from ..poly import IntPolynomial, leading_form, resultant_univariate, monomials_of_degree
from ..weights import WeightSpec
from .archimedean import lattice
from .complete import (
    S_complete,
    S_product_side,
    T_complete,
    T_complete_all,
    T_product_side,
    T_star,
    T_star_all,
    T_star_product_side,
    Z_eval,
    factorize_modulus,
)
from .geometry import sp_prime_bruteforce


def relative_error(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|, 1); the unit floor matters only when both sides vanish."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


# ---------------------------------------------------------------------------
# multiplicativity


@dataclass
class MultInstance:
    identity: str
    q: int
    r: int
    s: int
    n: int
    a: int
    v: tuple[int, ...]
    f: IntPolynomial
    g: IntPolynomial


@dataclass
class MultReport:
    trials: int
    seed: int
    tol: float
    max_rel_error: dict[str, float] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def random_polynomial(rng: random.Random, n: int, degree: int, coeff: int = 9, lower: bool = True) -> IntPolynomial:
    """Random polynomial of exact degree with nonzero leading form; lower-order terms optional."""
    terms: dict[tuple[int, ...], int] = {}
    degs = range(degree + 1) if lower else [degree]
    for d in degs:
        for e in monomials_of_degree(n, d):
            if rng.random() < 0.5:
                terms[e] = rng.randint(-coeff, coeff)
    top = tuple([degree] + [0] * (n - 1))
    terms[top] = rng.choice([c for c in range(-coeff, coeff + 1) if c])
    return IntPolynomial.from_dict(n, terms)


def _coprime_split(rng: random.Random, q: int) -> tuple[int, int]:
    fac = list(factorint(q))
    rng.shuffle(fac)
    k = rng.randint(0, len(fac))
    r = math.prod(p**e for p, e in fac[:k])
    return r, q // r


def _random_modulus(rng: random.Random, n: int, max_q: int) -> int:
    # enumeration is q^n, so the two-variable instances use smaller moduli
    cap = max_q if n == 1 else min(max_q, 450)
    while True:
        q = rng.randint(2, cap)
        if len(factorint(q)) >= 2 or rng.random() < 0.2:
            return q


def multiplicativity_instances(trials: int, seed: int, max_q: int = 10**4) -> list[MultInstance]:
    rng = random.Random(seed)
    out = []
    idents = ("Tumult", "Sumult", "Tamult")
    for t in range(trials):
        ident = idents[t % 3]
        n = rng.choice((1, 2))
        q = _random_modulus(rng, n, max_q)
        if ident == "Sumult":
            fac = factorize_modulus(q)
            r, s = fac.b1, fac.q2
        else:
            r, s = _coprime_split(rng, q)
        unit_mod = s * r if ident == "Tamult" else factorize_modulus(q).q2
        a = rng.randint(1, max(unit_mod, 1))
        while math.gcd(a, unit_mod) != 1:
            a += 1
        v = tuple(rng.randint(0, q - 1) for _ in range(n))
        f = random_polynomial(rng, n, 4)
        g = random_polynomial(rng, n, 3)
        out.append(MultInstance(ident, q, r, s, n, a, v, f, g))
    return out


def evaluate_instance(inst: MultInstance) -> tuple[complex, complex]:
    if inst.identity == "Tumult":
        return T_complete(inst.q, inst.f, inst.g, inst.v), T_product_side(inst.r, inst.s, inst.f, inst.g, inst.v)
    if inst.identity == "Sumult":
        return S_complete(inst.q, inst.f, inst.g, inst.a, inst.v), S_product_side(inst.q, inst.f, inst.g, inst.a, inst.v)
    if inst.identity == "Tamult":
        return T_star(inst.q, inst.a, inst.g, inst.v), T_star_product_side(inst.r, inst.s, inst.a, inst.g, inst.v)
    raise ValueError(inst.identity)


def multiplicativity_suite(trials: int = 200, seed: int = 7, tol: float = 1e-9, max_q: int = 10**4) -> MultReport:
    rep = MultReport(trials, seed, tol)
    for inst in multiplicativity_instances(trials, seed, max_q):
        lhs, rhs = evaluate_instance(inst)
        err = relative_error(lhs, rhs)
        rep.max_rel_error[inst.identity] = max(rep.max_rel_error.get(inst.identity, 0.0), err)
        if not err <= tol:
            rep.failures.append({"identity": inst.identity, "q": inst.q, "r": inst.r, "s": inst.s, "n": inst.n, "err": err})
    return rep


def z_table_check(max_p: int = 50) -> dict:
    """Z(p, x, y) against 1, 1 - p, (p - 1)^2, and |Z(r,x,y)| <= (r,x)(r,y)."""
    bad = []
    for p in primes_upto(max_p):
        for x in range(p):
            for y in range(p):
                k = (x == 0) + (y == 0)
                expect = (1, 1 - p, (p - 1) ** 2)[k]
                if Z_eval(p, x, y) != expect:
                    bad.append((p, x, y))
    return {"max_p": max_p, "mismatches": bad, "passed": not bad}


def z_gcd_envelope(max_r: int = 200) -> bool:
    return all(
        abs(Z_eval(r, x, y)) <= math.gcd(r, x) * math.gcd(r, y)
        for r in range(1, max_r + 1)
        for x in range(r)
        for y in range(r)
    )


# ---------------------------------------------------------------------------
# bounds at primes


@dataclass
class PrimeBoundReport:
    p: int
    n: int
    s_prime: int | None
    max_ratio: float
    tiers: list[float]
    skipped: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


def _tiers(ratios: np.ndarray, k: int = 2) -> list[float]:
    vals = sorted({round(float(r), 9) for r in ratios.ravel()}, reverse=True)
    return vals[:k]


def prime_bound_check(f: IntPolynomial, g: IntPolynomial, p: int) -> PrimeBoundReport:
    """max_v |T(p, v)| / p^{(n+3+s_p')/2}, all v at once via a DFT.

    The largest two distinct ratio levels are reported: exceptional v (on
    which the unspecified polynomial would vanish) can sit in the top tier.
    """
    n = f.n_vars
    F0, G0 = leading_form(f), leading_form(g)
    if all(c % p == 0 for _, c in F0.terms):
        return PrimeBoundReport(p, n, None, 0.0, [], "leading form vanishes mod p")
    s = sp_prime_bruteforce(F0, G0, p, with_counts=False).s_prime
    T = np.abs(T_complete_all(p, f, g))
    ratios = T / p ** ((n + 3 + s) / 2)
    return PrimeBoundReport(p, n, s, float(ratios.max()), _tiers(ratios))


def prime_bound_check_univariate(f: IntPolynomial, g: IntPolynomial, p: int) -> PrimeBoundReport:
    """max_v |T(p, v)| / (p (p, Res(f, g))) for one variable."""
    if f.n_vars != 1:
        raise ValueError("univariate check")
    res = resultant_univariate(f, g)
    T = np.abs(T_complete_all(p, f, g))
    ratios = T / (p * math.gcd(p, res))
    return PrimeBoundReport(p, 1, None, float(ratios.max()), _tiers(ratios))


def prime_bound_instances(seed: int = 11, per_prime: int = 2, max_p: int = 31, max_n: int = 3) -> list[tuple[IntPolynomial, IntPolynomial, int]]:
    """Seeded (f, g, p) with deg f = 4, deg g = 3 and p^n small enough to enumerate."""
    rng = random.Random(seed)
    out = []
    for p in primes_upto(max_p):
        for n in range(2, max_n + 1):
            if p**n > 40_000:
                continue
            for _ in range(per_prime):
                out.append((random_polynomial(rng, n, 4, 5), random_polynomial(rng, n, 3, 5), p))
    return out


def prime_bound_suite(seed: int = 11, per_prime: int = 2, max_p: int = 31, max_n: int = 3) -> list[PrimeBoundReport]:
    return [prime_bound_check(f, g, p) for f, g, p in prime_bound_instances(seed, per_prime, max_p, max_n)]


def weil_cubic_check(p: int) -> float:
    """max over a and v of |T*_a(p, x^3, v)| / (2 sqrt p)."""
    g = IntPolynomial.diagonal([1], 3)
    worst = 0.0
    for a in range(1, p):
        worst = max(worst, float(np.abs(T_star_all(p, a, g)).max()))
    return worst / (2 * math.sqrt(p))


# ---------------------------------------------------------------------------
# divisibility counts


@dataclass
class DivisorCountReport:
    m: int
    P: float
    lhs: float
    ratio: float
    skipped: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


def divisor_count_check(f: IntPolynomial, W: WeightSpec, P: float, m: int) -> DivisorCountReport:
    """sum_{m | f(x)} W(x/P) and its ratio against P^n / m."""
    if not is_squarefree(m):
        return DivisorCountReport(m, P, 0.0, 0.0, "m not squarefree")
    F0 = leading_form(f)
    for p, _ in factorint(m):
        if sp_prime_bruteforce(F0, None, p, with_counts=False).s_prime != -1:
            return DivisorCountReport(m, P, 0.0, 0.0, f"leading form singular mod {p}")
    lat = lattice(W, P)
    vals = f.eval_mod(m, lat.mesh()) if m > 1 else np.zeros(lat.weights.shape, dtype=np.int64)
    lhs = float(np.sum(lat.weights[vals == 0]))
    return DivisorCountReport(m, P, lhs, lhs * m / P**f.n_vars)


# ---------------------------------------------------------------------------
# Parseval


def parseval_check(q: int, f: IntPolynomial, g: IntPolynomial, a: int) -> tuple[float, float]:
    """q^{-n} sum_v |S(q, v)|^2 against sum_x |summand(x)|^2."""
    from .complete import S_complete_all, S_complete_weight

    A = S_complete_weight(q, f, g, a)
    S = S_complete_all(q, f, g, a)
    return float(np.sum(np.abs(S) ** 2) / q**f.n_vars), float(np.sum(np.abs(A) ** 2))


# ---------------------------------------------------------------------------
# cube-full envelope


def p_sum_envelope(g: IntPolynomial, c: int, d: int, a: int, v0: Sequence[int], V: int) -> float:
    """sum_{|v - v0| <= V} P(q3, v) for q3 = c^2 d."""
    from .complete import P_sum

    n = g.n_vars
    total = 0.0
    for off in np.ndindex(*([2 * V + 1] * n)):
        v = tuple(int(v0[i]) + int(off[i]) - V for i in range(n))
        total += P_sum(g, c, d, a, v)
    return total


def divisor_weight(d: int) -> int:
    """D(d) = number of divisors, used as the arithmetic factor in the envelope."""
    return len(divisors(d))
