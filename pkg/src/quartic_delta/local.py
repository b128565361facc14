"""Local densities: partial singular series, the singular integral, and related arithmetic weights."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .arith import factorint, is_squarefree, ramanujan_table
from .errors import GuardError, QuadratureError
from .expsums.complete import factorize_modulus
from .poly import IntPolynomial, content
from .weights import WeightSpec, coordinate_factors

SERIES_GUARD = 10**7
MODES = ("generic", "diagonal-fast")


@dataclass
class SingularSeriesPartial:
    """S(R) = sum_{q <= R} term(q) with term(q) = q^{-n} sum*_a sum_{x mod q} e_q(a F(x))."""

    R: int
    mode: str
    terms: list[tuple[int, float]] = field(default_factory=list)

    @property
    def value(self) -> float:
        return math.fsum(t for _, t in self.terms)

    def partial(self, R: int) -> float:
        return math.fsum(t for q, t in self.terms if q <= R)

    def to_json(self) -> dict:
        return {"R": self.R, "mode": self.mode, "value": self.value, "terms": [[q, t] for q, t in self.terms]}


def series_term_generic(F: IntPolynomial, q: int) -> Fraction:
    """Exact q-term: the a-sum collapses to c_q(F(x)), so term = q^{-n} sum_r #{F = r mod q} c_q(r)."""
    n = F.n_vars
    if q**n > SERIES_GUARD:
        raise GuardError(f"q^n = {q**n} exceeds guard")
    if q == 1:
        return Fraction(1)
    hist = np.bincount(F.grid_mod(q).ravel(), minlength=q)
    total = sum(int(h) * int(c) for h, c in zip(hist, ramanujan_table(q)) if h)
    return Fraction(total, q**n)


def quartic_gauss_sums(q: int) -> np.ndarray:
    """G(q, b) = sum_{x mod q} e_q(b x^4) for all b mod q."""
    x = np.arange(q, dtype=np.int64)
    r = (x * x % q) * (x * x % q) % q
    hist = np.bincount(r, minlength=q).astype(float)
    return np.fft.ifft(hist) * q


def series_term_diagonal(coeffs: Sequence[int], q: int) -> float:
    """q-term for sum c_i x_i^4 as q^{-n} sum*_a prod_i G(q, a c_i)."""
    if q == 1:
        return 1.0
    G = quartic_gauss_sums(q) / q
    a = np.array([a for a in range(1, q + 1) if math.gcd(a, q) == 1], dtype=np.int64)
    prod = np.ones(len(a), dtype=complex)
    for c in coeffs:
        prod *= G[(a * (int(c) % q)) % q]
    return float(np.sum(prod).real)


def singular_series(F: IntPolynomial, R: int, mode: str = "generic") -> SingularSeriesPartial:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if R < 1:
        raise ValueError("R must be at least 1")
    out = SingularSeriesPartial(R, mode)
    if mode == "diagonal-fast":
        coeffs = F.diagonal_coeffs()
        if coeffs is None or F.degree != 4:
            raise ValueError("diagonal-fast mode needs a diagonal quartic form")
        out.terms = [(q, series_term_diagonal(coeffs, q)) for q in range(1, R + 1)]
    else:
        out.terms = [(q, float(series_term_generic(F, q))) for q in range(1, R + 1)]
    return out


@dataclass
class ConvergenceReport:
    ladder: list[int]
    values: list[float]
    differences: list[float]
    psi_hat: float
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def convergence_probe(F: IntPolynomial, ladder: Sequence[int], mode: str = "diagonal-fast") -> ConvergenceReport:
    """Fit |S(R_{k+1}) - S(R_k)| ~ R_k^{-psi} by least squares in log-log."""
    ladder = sorted(int(r) for r in ladder)
    if len(ladder) < 3:
        raise ValueError("insufficient data: the ladder needs at least three cutoffs")
    ser = singular_series(F, ladder[-1], mode)
    vals = [ser.partial(R) for R in ladder]
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    if min(diffs) == 0:
        raise ValueError("zero increment on the ladder; cannot fit a rate")
    x = np.log(np.array(ladder[:-1], dtype=float))
    y = np.log(np.array(diffs))
    slope = float(np.polyfit(x, y, 1)[0])
    return ConvergenceReport(ladder, vals, diffs, -slope, -slope > 0)


# ---------------------------------------------------------------------------
# singular integral


@dataclass
class SingularIntegralPartial:
    R: float
    value: float
    nodes: int
    route: str

    def to_json(self) -> dict:
        return asdict(self)


def _support_nodes(w: WeightSpec, j: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = w.box()[j]
    step = (hi - lo) / N
    x = lo + step * (np.arange(N) + 0.5)
    return x, coordinate_factors(w, j, x) * step


def _gl_panels(a: float, b: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    t, wt = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(a, b, panels + 1)
    mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
    return (mid[:, None] + half[:, None] * t).ravel(), (half[:, None] * wt).ravel()


def _value_range(F: IntPolynomial, w: WeightSpec) -> float:
    corners = np.array(np.meshgrid(*[np.linspace(lo, hi, 9) for lo, hi in w.box()], indexing="ij"))
    return float(np.max(np.abs(F.eval_float(list(corners))))) + 1.0


def singular_integral(
    F: IntPolynomial,
    W: WeightSpec,
    R: float,
    tol: float = 1e-8,
    x_nodes: int = 64,
    max_doublings: int = 8,
) -> SingularIntegralPartial:
    """I(R) = int_{-R}^{R} int W(x) e(z F(x)) dx dz by iterated quadrature.

    Diagonal F with a product weight: the x-integral factors over coordinates.
    Otherwise the x-integral is a tensor midpoint rule (small n only).  Both
    the x- and z-resolutions are doubled together until the value is stable.
    """
    if R < 0:
        raise ValueError("R must be nonnegative")
    if R == 0:
        return SingularIntegralPartial(0.0, 0.0, 0, "none")
    coeffs = F.diagonal_coeffs()
    n = F.n_vars
    if coeffs is None and x_nodes**n > 10**7:
        raise GuardError("tensor quadrature too large; use a diagonal form")
    span = _value_range(F, W)

    def at(Nx: int, z_per_cycle: float) -> float:
        panels = max(8, math.ceil(z_per_cycle * 2 * R * span / 16))
        z, wz = _gl_panels(0.0, R, panels)
        if coeffs is not None:
            deg = F.degree
            phi = np.ones(len(z), dtype=complex)
            for j, c in enumerate(coeffs):
                x, wx = _support_nodes(W, j, Nx)
                phi *= np.exp(2j * np.pi * np.outer(z, c * x**deg)) @ wx
        else:
            xs, ws = zip(*[_support_nodes(W, j, Nx) for j in range(n)])
            mesh = np.meshgrid(*xs, indexing="ij")
            wgt = ws[0]
            for wj in ws[1:]:
                wgt = np.multiply.outer(wgt, wj)
            vals = F.eval_float(mesh).ravel()
            phi = np.exp(2j * np.pi * np.outer(z, vals)) @ wgt.ravel()
        # the integrand at -z is the conjugate of that at z
        return float(2 * np.sum(wz * phi.real))

    Nx, zc = x_nodes, 4.0
    prev = at(Nx, zc)
    for _ in range(max_doublings):
        Nx, zc = 2 * Nx, 2 * zc
        cur = at(Nx, zc)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-3):
            return SingularIntegralPartial(float(R), cur, Nx, "diagonal" if coeffs is not None else "tensor")
        prev = cur
    raise QuadratureError("singular integral did not stabilise")


def singular_integral_fubini(F: IntPolynomial, W: WeightSpec, R: float, x_nodes: int = 256) -> float:
    """Same quantity with the z-integral done first: int W(x) 2R sinc(2R F(x)) dx (tensor rule, small n)."""
    n = F.n_vars
    if x_nodes**n > 10**8:
        raise GuardError("tensor quadrature too large")
    xs, ws = zip(*[_support_nodes(W, j, x_nodes) for j in range(n)])
    mesh = np.meshgrid(*xs, indexing="ij")
    wgt = ws[0]
    for wj in ws[1:]:
        wgt = np.multiply.outer(wgt, wj)
    return float(np.sum(wgt * 2 * R * np.sinc(2 * R * F.eval_float(mesh))))


# ---------------------------------------------------------------------------
# arithmetic weights


def D_weight(q: int, sp_table: Mapping[int, int]) -> float:
    """prod_{p | b1} p^{i/2} prod_{p | q2} p^i with i = s_p' + 1."""
    fac = factorize_modulus(q)
    out = 1.0
    for p, _ in factorint(q):
        if p not in sp_table:
            raise KeyError(f"no s_p' for p = {p}")
        i = int(sp_table[p]) + 1
        out *= p ** (i / 2) if fac.b1 % p == 0 else p**i
    return out


def D_weight_univariate(q: int, G0: IntPolynomial) -> int:
    """One variable: the product of the primes dividing both q and the content of G0."""
    c = content(G0) if not G0.is_zero() else 0
    g = math.gcd(q, c)
    return math.prod(p for p, _ in factorint(g)) if g > 1 else 1


def _shape_count(i: int, full: bool, R: float) -> int:
    """#{b in (R, 2R]}: b = m^i with m squarefree, or (full) every exponent of b at least i."""
    lo, hi = math.floor(R) + 1, math.floor(2 * R)
    cnt = 0
    for b in range(max(lo, 1), hi + 1):
        f = factorint(b)
        if full:
            ok = all(e >= i for _, e in f)
        else:
            ok = all(e == i for _, e in f)
        cnt += ok
    return cnt


@dataclass
class ModulusShapeReport:
    R: list[float]
    counts: list[int]
    total: int
    bound: float
    ratio: float

    def to_json(self) -> dict:
        return asdict(self)


def modulus_shape_count(R: Sequence[float]) -> ModulusShapeReport:
    """Count tuples (b_1 ~ R_1, ..., b_{l-1} ~ R_{l-1}, q_l ~ R_l) against prod R_i^{1/i}."""
    ell = len(R)
    if not 1 <= ell <= 5:
        raise ValueError("between one and five ranges")
    if max(R) > 10**4:
        raise GuardError("R_i must be at most 10^4")
    counts = [_shape_count(i, i == ell, r) for i, r in enumerate(R, start=1)]
    total = math.prod(counts)
    bound = math.prod(max(r, 1.0) ** (1 / i) for i, r in enumerate(R, start=1))
    return ModulusShapeReport(list(R), counts, total, bound, total / bound)


def main_term(series: SingularSeriesPartial | float, integral: SingularIntegralPartial | float, P: float, n: int) -> float:
    s = series.value if isinstance(series, SingularSeriesPartial) else float(series)
    i = integral.value if isinstance(integral, SingularIntegralPartial) else float(integral)
    return s * i * P ** (n - 4)
