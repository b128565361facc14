"""Exact counts of zeros of forms: projective points of bounded height and smoothed affine counts."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .arith import mobius
from .errors import GuardError
from .poly import IntPolynomial
from .weights import WeightSpec, coordinate_factors, lattice_points

DIRECT_GUARD = 10**9
HALF_GUARD = 5 * 10**7
METHODS = ("auto", "direct", "meet-in-middle")


@dataclass
class CountResult:
    P: int
    count: int
    method: str
    elapsed: float

    def to_json(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# direct enumeration


def _chunks(n: int, P: int):
    """Slices of [-P, P]^n as meshgrids, one per value of the first coordinate."""
    r = np.arange(-P, P + 1, dtype=np.int64)
    rest = np.meshgrid(*([r] * (n - 1)), indexing="ij") if n > 1 else []
    for x1 in r:
        yield [np.full(rest[0].shape if rest else (), x1, dtype=np.int64), *rest]


def _affine_zeros_direct(F: IntPolynomial, P: int) -> np.ndarray:
    """All x in [-P, P]^n with F(x) = 0, as rows."""
    n = F.n_vars
    if (2 * P + 1) ** n > DIRECT_GUARD:
        raise GuardError(f"(2P+1)^n = {(2 * P + 1) ** n} exceeds guard {DIRECT_GUARD}")
    out = []
    for grid in _chunks(n, P):
        vals = F.eval_array(grid)
        mask = vals == 0
        if np.any(mask):
            out.append(np.stack([np.broadcast_to(g, mask.shape)[mask] for g in grid], axis=-1))
    return np.concatenate(out) if out else np.zeros((0, n), dtype=np.int64)


def count_projective_direct(F: IntPolynomial, P: int) -> int:
    """Primitive zeros with max |x_i| <= P, then divided by the sign action x -> -x."""
    Z = _affine_zeros_direct(F, P)
    g = np.gcd.reduce(np.abs(Z), axis=1) if len(Z) else np.zeros(0, dtype=np.int64)
    primitive = int(np.sum(g == 1))
    if primitive % 2:
        raise AssertionError("primitive zeros must pair up under x -> -x")
    return primitive // 2


# ---------------------------------------------------------------------------
# meet in the middle for diagonal forms


def _half_values(coeffs: Sequence[int], B: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values of sum c_i x_i^d over |x_i| <= B, with multiplicities."""
    x = np.arange(-B, B + 1, dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    for c in coeffs:
        vals = (vals[:, None] + int(c) * x[None, :] ** degree).ravel()
    return np.unique(vals, return_counts=True)


def _check_range(coeffs: Sequence[int], B: int, degree: int) -> None:
    if sum(abs(int(c)) for c in coeffs) * B**degree >= 2**62:
        raise GuardError("half-sum values overflow int64")


def _match(lv: np.ndarray, lw: np.ndarray, rv: np.ndarray, rw: np.ndarray):
    """sum over values v of lw(v) * rw(-v)."""
    neg = -rv[::-1]
    negw = rw[::-1]
    common, il, ir = np.intersect1d(lv, neg, assume_unique=True, return_indices=True)
    return lw[il], negw[ir]


def affine_count_mitm(coeffs: Sequence[int], B: int, split: int | None = None, degree: int = 4) -> int:
    """#{x in [-B, B]^n : sum c_i x_i^d = 0}, zero vector included."""
    n = len(coeffs)
    split = n // 2 if split is None else split
    if not 0 < split < n:
        raise ValueError("split must leave both halves nonempty")
    if (2 * B + 1) ** max(split, n - split) > HALF_GUARD:
        raise GuardError("half enumeration exceeds guard")
    _check_range(coeffs, B, degree)
    lv, lc = _half_values(coeffs[:split], B, degree)
    rv, rc = _half_values(coeffs[split:], B, degree)
    a, b = _match(lv, lc, rv, rc)
    return int(np.sum(a.astype(object) * b.astype(object)))


def meet_in_middle_diagonal(coeffs: Sequence[int], P: int, split: int | None = None, degree: int = 4) -> CountResult:
    """Projective count via N_prim(P) = sum_d mu(d) (N_all(P // d) - 1), halved for the sign action."""
    t = time.perf_counter()
    total = 0
    for d in range(1, P + 1):
        mu = mobius(d)
        if mu:
            total += mu * (affine_count_mitm(coeffs, P // d, split, degree) - 1)
    if total % 2:
        raise AssertionError("primitive count must be even")
    return CountResult(P, total // 2, "meet-in-middle", time.perf_counter() - t)


def count_projective(F: IntPolynomial, P: int, method: str = "auto") -> CountResult:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    coeffs = F.diagonal_coeffs()
    if method == "auto":
        method = "meet-in-middle" if coeffs is not None and F.n_vars >= 2 else "direct"
    if method == "meet-in-middle":
        if coeffs is None:
            raise ValueError("meet-in-middle needs a diagonal form")
        return meet_in_middle_diagonal(coeffs, P, degree=F.degree)
    t = time.perf_counter()
    c = count_projective_direct(F, P)
    return CountResult(P, c, "direct", time.perf_counter() - t)


# ---------------------------------------------------------------------------
# smoothed counts


def count_smoothed_direct(F: IntPolynomial, W: WeightSpec, P: float, guard: int = 10**8) -> float:
    ranges, grid = lattice_points(W, P, guard)
    vals = F.eval_array(np.meshgrid(*ranges, indexing="ij"))
    return float(np.sum(grid[vals == 0]))


def _weighted_half(coeffs, ranges, factors, degree):
    vals = np.zeros(1, dtype=np.int64)
    wts = np.ones(1)
    for c, r, f in zip(coeffs, ranges, factors):
        vals = (vals[:, None] + int(c) * r[None, :] ** degree).ravel()
        wts = (wts[:, None] * f[None, :]).ravel()
    u, inv = np.unique(vals, return_inverse=True)
    return u, np.bincount(inv, weights=wts, minlength=len(u))


def count_smoothed(F: IntPolynomial, W: WeightSpec, P: float, method: str = "auto") -> float:
    """N_W(F, P) = sum_{F(x) = 0} W(x/P) over all integer x."""
    coeffs = F.diagonal_coeffs()
    if method == "auto":
        method = "meet-in-middle" if coeffs is not None and F.n_vars >= 4 else "direct"
    if method == "direct":
        return count_smoothed_direct(F, W, P)
    if coeffs is None:
        raise ValueError("meet-in-middle needs a diagonal form")
    ranges = _support_ranges(W, P)
    factors = [coordinate_factors(W, j, r / P) for j, r in enumerate(ranges)]
    n = F.n_vars
    s = n // 2
    if math.prod(len(r) for r in ranges[s:]) > HALF_GUARD:
        raise GuardError("half enumeration exceeds guard")
    deg = F.degree
    lv, lw = _weighted_half(coeffs[:s], ranges[:s], factors[:s], deg)
    rv, rw = _weighted_half(coeffs[s:], ranges[s:], factors[s:], deg)
    a, b = _match(lv, lw, rv, rw)
    return float(np.sum(a * b))


def _support_ranges(W: WeightSpec, P: float) -> list[np.ndarray]:
    ranges = []
    for lo, hi in W.box():
        a = math.floor(lo * P) + 1
        b = math.ceil(hi * P) - 1
        ranges.append(np.arange(a, b + 1, dtype=np.int64))
    return ranges


# ---------------------------------------------------------------------------
# growth


@dataclass
class GrowthFit:
    ladder: list[int]
    counts: list[int]
    slope: float
    intercept: float
    expected: int

    def to_json(self) -> dict:
        return asdict(self)


def growth_fit(F: IntPolynomial, ladder: Sequence[int], method: str = "auto") -> GrowthFit:
    """Least-squares slope of log N(P) against log P."""
    ladder = [int(p) for p in ladder]
    if len(ladder) < 4:
        raise ValueError("insufficient data: at least four ladder points are needed")
    counts = [count_projective(F, P, method).count for P in ladder]
    if min(counts) <= 0:
        raise ValueError("zero counts cannot be fitted on a log scale")
    slope, icpt = np.polyfit(np.log(ladder), np.log(counts), 1)
    return GrowthFit(ladder, counts, float(slope), float(icpt), F.n_vars - 4)
