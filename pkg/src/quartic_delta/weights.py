"""Smooth compactly supported weights: the gamma-product bump and its differenced products."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import GuardError, QuadratureError

BOUNDARY_CLAMP = 1e-12
MAX_ORDER = 8


PROFILES = ("smooth", "abs")
DEFAULT_PROFILE = "smooth"


@lru_cache(maxsize=None)
def _abs_derivative_poly(k: int) -> tuple[float, ...]:
    """Coefficients (in s = 1/u) of P_k with d^k/du^k e^{-1/u^2} = P_k(1/u) e^{-1/u^2}."""
    p = np.array([1.0])
    for _ in range(k):
        # d/du P(1/u) = -s^2 P'(s);  d/du e^{-1/u^2} = 2 s^3 e^{-1/u^2}
        dp = npoly.polyder(p) if len(p) > 1 else np.array([0.0])
        term1 = -npoly.polymulx(npoly.polymulx(dp))
        term2 = 2.0 * npoly.polymulx(npoly.polymulx(npoly.polymulx(p)))
        p = npoly.polyadd(term1, term2)
    return tuple(p)


@lru_cache(maxsize=None)
def _smooth_derivative(k: int):
    """Callable (x, v) -> P_k(x, v) with d^k/dx^k e^{-1/v^2} = P_k e^{-1/v^2}, v = 1 - x^2."""
    import sympy

    x = sympy.Symbol("x")
    v = sympy.Symbol("v")
    expr = sympy.Integer(1)
    for _ in range(k):
        # dv/dx = -2x and d/dx e^{-1/v^2} = e^{-1/v^2} (2/v^3)(-2x)
        expr = sympy.diff(expr, x) + sympy.diff(expr, v) * (-2 * x) + expr * (-4 * x / v**3)
        expr = sympy.expand(expr)
    return sympy.lambdify((x, v), expr, "numpy")


def gamma(x: np.ndarray | float, profile: str = DEFAULT_PROFILE) -> np.ndarray:
    """One-dimensional bump on (-1, 1) with gamma(0) = e^{-1}.

    ``smooth``: e^{-1/(1-x^2)^2};  ``abs``: e^{-1/(1-|x|)^2}, which has a corner at 0.
    """
    return gamma_derivative(x, 0, profile)


def gamma_derivative(x: np.ndarray | float, k: int, profile: str = DEFAULT_PROFILE) -> np.ndarray:
    """k-th derivative of gamma (for ``abs``, one-sided at 0 from the sign of x)."""
    x = np.asarray(x, dtype=float)
    if profile == "smooth":
        v = 1.0 - x * x
        out = np.zeros_like(v)
        m = v > BOUNDARY_CLAMP
        vm = v[m]
        pref = 1.0 if k == 0 else _smooth_derivative(k)(x[m], vm)
        out[m] = pref * np.exp(-1.0 / vm**2)
        return out
    if profile != "abs":
        raise ValueError(f"unknown profile {profile!r}")
    u = 1.0 - np.abs(x)
    out = np.zeros_like(u)
    m = u > BOUNDARY_CLAMP
    s = 1.0 / u[m]
    val = npoly.polyval(s, np.array(_abs_derivative_poly(k))) * np.exp(-(s**2))
    # x -> u = 1 - |x| contributes (-sign x)^k
    sgn = np.where(x[m] >= 0, -1.0, 1.0) ** k
    out[m] = sgn * val
    return out


@dataclass(frozen=True)
class WeightSpec:
    """Either prod_j gamma((x_j - x0_j)/rho) or the differenced product W(y + h/P) W(y)."""

    x0: tuple[Fraction, ...]
    rho: Fraction = Fraction(1, 4)
    kind: str = "gamma-product"
    shift: tuple[int, ...] | None = None
    P: int | None = None
    profile: str = DEFAULT_PROFILE
    max_order: int = MAX_ORDER

    def __post_init__(self) -> None:
        object.__setattr__(self, "x0", tuple(Fraction(c) for c in self.x0))
        object.__setattr__(self, "rho", Fraction(self.rho))
        if not 0 < self.rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.kind not in ("gamma-product", "differenced"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "differenced":
            if self.shift is None or self.P is None or len(self.shift) != len(self.x0):
                raise ValueError("differenced weight needs shift of length n and P")
            object.__setattr__(self, "shift", tuple(int(h) for h in self.shift))

    @property
    def n_vars(self) -> int:
        return len(self.x0)

    @property
    def base(self) -> "WeightSpec":
        return WeightSpec(self.x0, self.rho, profile=self.profile)

    def differenced(self, h: Sequence[int], P: int) -> "WeightSpec":
        return WeightSpec(self.x0, self.rho, "differenced", tuple(h), P, self.profile)

    def box(self) -> list[tuple[float, float]]:
        """Closed box containing the support in the x variable."""
        r = float(self.rho)
        lo = [float(c) - r for c in self.x0]
        hi = [float(c) + r for c in self.x0]
        if self.kind == "differenced":
            # y and y + h/P must both lie in the base support
            sh = [hh / self.P for hh in self.shift]
            lo = [max(a, a - s) for a, s in zip(lo, sh)]
            hi = [min(b, b - s) for b, s in zip(hi, sh)]
        return list(zip(lo, hi))

    def to_json(self) -> dict:
        d = {"kind": self.kind, "x0": [str(c) for c in self.x0], "rho": str(self.rho), "profile": self.profile}
        if self.kind == "differenced":
            d["shift"] = list(self.shift)
            d["P"] = self.P
        return d

    @classmethod
    def from_json(cls, data: dict | str) -> "WeightSpec":
        if isinstance(data, str):
            data = json.loads(data)
        kind = data.get("kind", "gamma-product")
        x0 = tuple(Fraction(str(c)) for c in data["x0"])
        rho = Fraction(str(data.get("rho", "1/4")))
        profile = data.get("profile", DEFAULT_PROFILE)
        if kind == "differenced":
            return cls(x0, rho, kind, tuple(data["shift"]), int(data["P"]), profile)
        return cls(x0, rho, kind, profile=profile)


def _coord_factor(w: WeightSpec, j: int, x: np.ndarray, k: int = 0) -> np.ndarray:
    """k-th derivative of the j-th one-dimensional base factor."""
    r = float(w.rho)
    return gamma_derivative((x - float(w.x0[j])) / r, k, w.profile) / r**k


def eval_weight(w: WeightSpec, x: np.ndarray | Sequence[float]) -> np.ndarray:
    """Weight values at points x (last axis has length n_vars)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != w.n_vars:
        raise ValueError("dimension mismatch")
    out = np.ones(x.shape[:-1])
    for j in range(w.n_vars):
        out = out * _coord_factor(w, j, x[..., j])
        if w.kind == "differenced":
            out = out * _coord_factor(w, j, x[..., j] + w.shift[j] / w.P)
    return out


def coordinate_factors(w: WeightSpec, j: int, x: np.ndarray) -> np.ndarray:
    """The j-th one-dimensional factor of the (product) weight."""
    f = _coord_factor(w, j, x)
    if w.kind == "differenced":
        f = f * _coord_factor(w, j, x + w.shift[j] / w.P)
    return f


@lru_cache(maxsize=None)
def gamma_derivative_sup(k: int, profile: str = DEFAULT_PROFILE, samples: int = 200_001) -> float:
    """sup |gamma^{(k)}| from dense sampling of the analytic derivative."""
    x = np.linspace(-1.0, 1.0, samples)
    return float(np.max(np.abs(gamma_derivative(x, k, profile))))


SAFETY_FACTOR = 1.01


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def derivative_bound(w: WeightSpec, j: int) -> float:
    """Upper bound for all mixed partials of total order j (sampled sup times a safety factor)."""
    if j < 0 or j > w.max_order:
        raise ValueError(f"order {j} beyond configured maximum {w.max_order}")
    r = float(w.rho)

    def base(order: int) -> float:
        best = 0.0
        for comp in _compositions(order, w.n_vars):
            val = 1.0
            for k in comp:
                val *= gamma_derivative_sup(k, w.profile) / r**k
            best = max(best, val)
        return best

    if w.kind == "gamma-product":
        return SAFETY_FACTOR * base(j)
    # Leibniz: the partial of order alpha splits over beta <= alpha; summing C(alpha, beta) over |beta| = k gives C(j, k)
    return SAFETY_FACTOR * sum(math.comb(j, k) * base(k) * base(j - k) for k in range(j + 1))


def _midpoint_1d(func, lo: float, hi: float, breaks: Sequence[float], step: float) -> float | complex:
    """Composite midpoint rule on [lo, hi], split at interior kink points."""
    pts = sorted({lo, hi, *[b for b in breaks if lo < b < hi]})
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        m = max(1, int(math.ceil((b - a) / step)))
        hstep = (b - a) / m
        x = a + hstep * (np.arange(m) + 0.5)
        total = total + hstep * np.sum(func(x))
    return total


def _factor_kinks(w: WeightSpec, j: int) -> list[float]:
    if w.profile == "smooth":
        return []
    ks = [float(w.x0[j])]
    if w.kind == "differenced":
        ks.append(float(w.x0[j]) - w.shift[j] / w.P)
    return ks


def fourier(
    w: WeightSpec,
    t: Sequence[float],
    quad_step: float = 1e-3,
    tol: float = 1e-6,
    max_halvings: int = 12,
) -> complex:
    """Numerical integral of w(x) e(-t.x) over R^n as a product of one-dimensional midpoint rules.

    The step is halved until consecutive values differ by less than ``tol``
    (relative to the modulus of the result, absolute when it is below one).
    """
    if len(t) != w.n_vars:
        raise ValueError("dimension mismatch")
    box = w.box()

    def at_step(step: float) -> complex:
        val: complex = 1.0
        for j in range(w.n_vars):
            lo, hi = box[j]
            if hi <= lo:
                return 0.0
            tj = float(t[j])
            val *= _midpoint_1d(
                lambda x, j=j, tj=tj: coordinate_factors(w, j, x) * np.exp(-2j * np.pi * tj * x),
                lo, hi, _factor_kinks(w, j), step,
            )
        return complex(val)

    prev = at_step(quad_step)
    step = quad_step
    for _ in range(max_halvings):
        step /= 2
        cur = at_step(step)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            # one Richardson step for the h^2 midpoint error
            return (4 * cur - prev) / 3
        prev = cur
    raise QuadratureError("fourier quadrature did not stabilise")


def weight_mass(w: WeightSpec, quad_step: float = 1e-3) -> float:
    return fourier(w, [0.0] * w.n_vars, quad_step).real


def lattice_points(w: WeightSpec, P: float, guard: int = 10**8) -> tuple[list[np.ndarray], np.ndarray]:
    """Integer points x with x/P in the support box, as coordinate ranges plus the weight grid.

    Returns per-coordinate integer ranges and the tensor of W(x/P) (only if the
    product of range lengths is within ``guard``).
    """
    ranges = []
    for lo, hi in w.box():
        a = math.floor(lo * P) + 1 if lo * P == math.floor(lo * P) else math.ceil(lo * P)
        b = math.ceil(hi * P) - 1 if hi * P == math.ceil(hi * P) else math.floor(hi * P)
        ranges.append(np.arange(a, b + 1, dtype=np.int64))
    size = math.prod(len(r) for r in ranges)
    if size > guard:
        raise GuardError(f"lattice enumeration of {size} points exceeds guard {guard}")
    factors = [coordinate_factors(w, j, r / P) for j, r in enumerate(ranges)]
    grid = factors[0]
    for f in factors[1:]:
        grid = np.multiply.outer(grid, f)
    return ranges, np.asarray(grid)
