"""Smooth delta symbol: the kernel h(x, y), the bump U and the arc weights p_q(z).

The kernel is built from a bump w0 on [1/2, 1] with integral one:

    h(x, y) = sum_{j >= 1} (x j)^{-1} (w0(x j) - w0(|y| / (x j))),

and for every integer n

    delta_0(n) = c_Q Q^{-2} sum_{q >= 1} c_q(n) h(q/Q, n/Q^2),   c_Q = Q / sum_{d >= 1} w0(d / Q).

Multiplying by U(n/Q^2) (U(0) = 1, support (-1/2, 1/2)) cuts the q-sum at Q
and, after Fourier inversion in y, gives

    delta_0(n) = c_Q sum_{q <= Q} c_q(n) int p_q(z) e(z n) dz,   p_q(z) = int h(q/Q, y) U(y) e(-Q^2 z y) dy.

The only approximation in ``delta_approx`` is truncating the z-integral to
|z| < (q Q)^{theta - 1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .arith import ramanujan_values
from .errors import GuardError, QuadratureError
from .poly import IntPolynomial
from .weights import WeightSpec, lattice_points

CQ_MODES = ("exact", "one")


def bump(x: np.ndarray, beta: float = 1.0, alpha: float = 1.0) -> np.ndarray:
    """exp(-beta / (1 - x^2)^alpha) on (-1, 1), zero outside; smooth for every alpha > 0."""
    x = np.asarray(x, dtype=float)
    v = 1.0 - x * x
    out = np.zeros_like(v)
    m = v > 1e-12
    out[m] = np.exp(-beta / v[m] ** alpha)
    return out


@lru_cache(maxsize=None)
def _bump_moments(beta: float, alpha: float) -> tuple[float, float]:
    """int bump and int x^2 bump over (-1, 1)."""
    t, wts = np.polynomial.legendre.leggauss(600)
    b = bump(t, beta, alpha)
    return float(np.sum(wts * b)), float(np.sum(wts * b * t * t))


@dataclass(frozen=True)
class BumpChoice:
    """The two free bumps of the construction.

    w0(t) = bump(4t - 3) / (int bump / 4), supported on (1/2, 1) with integral one;
    U(y) = b(2y) (1 + kappa y^2) with b = bump / bump(0), so U(0) = 1, and
    kappa chosen so that int U = 1.

    The identity is exact for any choice; the shape only affects how fast
    p_q(z) decays and hence the truncation error.  A flat-topped w0
    (small alpha, larger beta) concentrates its spectrum best at small Q.
    """

    beta_w: float = 9.0
    alpha_w: float = 0.25
    beta_u: float = 1.0
    alpha_u: float = 0.25

    @property
    def kappa(self) -> float:
        m0, m2 = _bump_moments(self.beta_u, self.alpha_u)
        b0 = math.exp(-self.beta_u)
        # int b(2y) dy = m0 / (2 b0), int y^2 b(2y) dy = m2 / (8 b0)
        mass0, mass2 = m0 / (2 * b0), m2 / (8 * b0)
        if mass0 > 1:
            raise ValueError("bump too wide for int U = 1 with U(0) = 1")
        return (1.0 - mass0) / mass2

    def U(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        b = bump(2 * y, self.beta_u, self.alpha_u) * math.exp(self.beta_u)
        return b * (1.0 + self.kappa * y * y)

    def w0(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return bump(4.0 * t - 3.0, self.beta_w, self.alpha_w) * (4.0 / _bump_moments(self.beta_w, self.alpha_w)[0])

    def to_json(self) -> dict:
        return {"beta_w": self.beta_w, "alpha_w": self.alpha_w, "beta_u": self.beta_u, "alpha_u": self.alpha_u, "kappa": self.kappa}


@dataclass
class DeltaKernel:
    """Tabulated delta-symbol data for one Q.

    y_points: trapezoid nodes on [-1/2, 1/2] for the y-integrals; by default
    eight per period of the fastest phase e(Q^2 Z_1 y), and at least 4096;
    z_nodes_per_cycle: Gauss-Legendre density for the z-integrals.
    """

    Q: int
    theta: float = 0.9
    cq_mode: str = "exact"
    y_points: int | None = None
    z_nodes_per_cycle: float = 6.0
    bumps: BumpChoice = field(default_factory=BumpChoice)

    def __post_init__(self) -> None:
        if self.Q < 1:
            raise ValueError("Q must be at least 1")
        if not 0 < self.theta < 1:
            raise ValueError("theta must lie in (0, 1)")
        if self.cq_mode not in CQ_MODES:
            raise ValueError(f"cq_mode must be one of {CQ_MODES}")
        if self.y_points is None:
            fastest = self.Q**2 * self.Z(1)
            self.y_points = max(4096, 1 << math.ceil(math.log2(8 * fastest)))

    @cached_property
    def C_Q(self) -> float:
        d = np.arange(1, self.Q + 1)
        return float(np.sum(self.bumps.w0(d / self.Q)))

    @property
    def c_Q(self) -> float:
        return self.Q / self.C_Q if self.cq_mode == "exact" else 1.0

    def Z(self, q: int) -> float:
        return float((q * self.Q) ** (self.theta - 1.0))

    def h(self, x: float, y: np.ndarray) -> np.ndarray:
        return h_eval(x, y, self.bumps)

    @cached_property
    def y_grid(self) -> tuple[np.ndarray, float]:
        y = np.linspace(-0.5, 0.5, self.y_points + 1)
        return y, 1.0 / self.y_points

    def hU(self, q: int) -> np.ndarray:
        y, _ = self.y_grid
        return h_eval(q / self.Q, y, self.bumps) * self.bumps.U(y)

    def p_q(self, q: int, z: np.ndarray | float) -> np.ndarray:
        """p_q(z) by the trapezoid rule in y (the integrand vanishes to all orders at +-1/2)."""
        if not 1 <= q <= self.Q:
            raise ValueError("q must satisfy 1 <= q <= Q")
        y, dy = self.y_grid
        z = np.atleast_1d(np.asarray(z, dtype=float))
        # h U is even in y, so the transform is a cosine transform
        phase = np.cos(2 * np.pi * self.Q**2 * np.outer(z, y))
        return phase @ self.hU(q) * dy

    def _z_rule(self, q: int, n_max: int) -> tuple[np.ndarray, np.ndarray]:
        Z = self.Z(q)
        cycles = Z * max(n_max, self.Q**2)
        panels = max(4, math.ceil(self.z_nodes_per_cycle * cycles / 16))
        t, w = np.polynomial.legendre.leggauss(16)
        edges = np.linspace(0.0, Z, panels + 1)
        mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
        nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return nodes, weights

    def arc_integral(self, q: int, n: np.ndarray) -> np.ndarray:
        """int_{|z| < Z_q} p_q(z) e(z n) dz for an array of integers n."""
        n = np.asarray(n)
        nodes, weights = self._z_rule(q, int(np.max(np.abs(n))) if n.size else 0)
        p = self.p_q(q, nodes)
        return 2.0 * np.cos(2 * np.pi * np.outer(n, nodes)) @ (weights * p)

    def arc_integral_fubini(self, q: int, n: np.ndarray) -> np.ndarray:
        """Same integral with the z-integration done in closed form first."""
        y, dy = self.y_grid
        Z = self.Z(q)
        n = np.asarray(n, dtype=float)
        kern = 2 * Z * np.sinc(2 * Z * (n[:, None] - self.Q**2 * y[None, :]))
        return kern @ self.hU(q) * dy

    def delta_approx(self, n: Sequence[int] | np.ndarray | int, route: str = "tabulated") -> np.ndarray:
        """c_Q sum_{q <= Q} c_q(n) int_{|z| < Z_q} p_q(z) e(z n) dz."""
        n_arr = np.atleast_1d(np.asarray(n, dtype=np.int64))
        total = np.zeros(n_arr.shape, dtype=float)
        for q in range(1, self.Q + 1):
            arc = self.arc_integral(q, n_arr) if route == "tabulated" else self.arc_integral_fubini(q, n_arr)
            total += ramanujan_values(q, n_arr) * arc
        return self.c_Q * total


def h_eval(x: float, y: np.ndarray | float, bumps: BumpChoice = BumpChoice()) -> np.ndarray:
    """The kernel h(x, y) for x > 0; vanishes unless x <= max(1, 2|y|)."""
    if x <= 0:
        raise ValueError("x must be positive")
    y = np.abs(np.asarray(y, dtype=float))
    out = np.zeros_like(y)
    j_max = int(math.floor(max(1.0, 2.0 * float(np.max(y, initial=0.0))) / x)) + 1
    for j in range(1, j_max + 1):
        xj = x * j
        out += (bumps.w0(xj) - bumps.w0(y / xj)) / xj
    return out


@dataclass
class DeltaReport:
    Q: int
    theta: float
    cq_mode: str
    c_Q: float
    n_max: int
    errors: list[float]
    max_error: float
    argmax: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_delta(
    Q: int,
    theta: float = 0.9,
    n_max: int | None = None,
    cq_mode: str = "exact",
    route: str = "tabulated",
    bumps: BumpChoice = BumpChoice(),
) -> DeltaReport:
    """delta_approx(n) - delta_0(n) for |n| <= n_max (default Q^2)."""
    n_max = Q * Q if n_max is None else n_max
    k = DeltaKernel(Q, theta, cq_mode, bumps=bumps)
    n = np.arange(-n_max, n_max + 1)
    err = k.delta_approx(n, route) - (n == 0)
    i = int(np.argmax(np.abs(err)))
    return DeltaReport(Q, theta, cq_mode, k.c_Q, n_max, err.tolist(), float(abs(err[i])), int(n[i]))


def delta_identity_check(Q: int, cq_mode: str = "exact", bumps: BumpChoice = BumpChoice()) -> float:
    """max_n |c_Q Q^{-2} sum_q c_q(n) h(q/Q, n/Q^2) - delta_0(n)| over |n| <= Q^2 (the untruncated identity)."""
    c = Q / float(np.sum(bumps.w0(np.arange(1, Q + 1) / Q))) if cq_mode == "exact" else 1.0
    n = np.arange(-Q * Q, Q * Q + 1)
    total = np.zeros(n.shape)
    # h(q/Q, y) vanishes for q > 2 |y| Q when |y| >= 1/2, so q <= 2 Q suffices here
    for q in range(1, 2 * Q + 1):
        total += ramanujan_values(q, n) * h_eval(q / Q, n / Q**2, bumps)
    return float(np.max(np.abs(c * total / Q**2 - (n == 0))))


@dataclass
class DeltaCountReport:
    P: float
    Q: int
    theta: float
    direct: float
    via_delta: float
    abs_error: float
    rel_error: float | None
    distinct_values: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def value_histogram(F: IntPolynomial, W: WeightSpec, P: float, guard: int = 10**8) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values m of F on the lattice points of P supp(W), with A(m) = sum_{F(x) = m} W(x/P)."""
    ranges, grid = lattice_points(W, P, guard)
    vals = F.eval_array(np.meshgrid(*ranges, indexing="ij"))
    if vals.dtype == object:
        raise GuardError("polynomial values exceed int64")
    m, inv = np.unique(vals.ravel(), return_inverse=True)
    return m, np.bincount(inv, weights=grid.ravel(), minlength=len(m))


def S_from_histogram(m: np.ndarray, A: np.ndarray, q: int, z: np.ndarray) -> np.ndarray:
    """S(q, z) = sum_m A(m) c_q(m) e(z m) at each z."""
    return np.exp(2j * np.pi * np.outer(np.atleast_1d(z), m)) @ (A * ramanujan_values(q, m))


def count_via_delta(
    F: IntPolynomial,
    W: WeightSpec,
    P: float,
    Q: int | None = None,
    theta: float = 0.9,
    route: str = "fubini",
    kernel: DeltaKernel | None = None,
) -> DeltaCountReport:
    """sum_{q <= Q} int_{|z| < Z_q} p_q(z) S(q, z) dz against the direct count sum_{F(x) = 0} W(x/P).

    S(q, z) is a finite combination of e(z m) over the values m taken by F, so
    the z-integral is computed value by value (``route`` chooses between the
    tabulated p_q and the closed-form z-integration).  Q defaults to P^{8/5}.
    """
    if Q is None:
        Q = max(1, round(P ** 1.6))
    k = kernel or DeltaKernel(Q, theta)
    m, A = value_histogram(F, W, P)
    total = 0.0
    for q in range(1, k.Q + 1):
        arc = k.arc_integral(q, m) if route == "tabulated" else k.arc_integral_fubini(q, m)
        total += float(np.sum(A * ramanujan_values(q, m) * arc))
    total *= k.c_Q
    direct = float(A[m == 0].sum())
    err = abs(total - direct)
    rel = err / direct if direct > 0 else None
    return DeltaCountReport(P, k.Q, k.theta, direct, total, err, rel, len(m))
