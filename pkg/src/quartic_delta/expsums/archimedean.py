"""Exponential sums over lattice points weighted by a smooth weight, and their Poisson duals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..arith import e_mod, ramanujan_values
from ..errors import GuardError, QuadratureError
from ..poly import IntPolynomial, difference
from ..weights import WeightSpec, coordinate_factors, lattice_points
from .complete import S_complete_all, S_complete_weight, factorize_modulus

LATTICE_GUARD = 10**8


@dataclass
class LatticeData:
    """Integer points in P * supp(W) with weights and polynomial values."""

    ranges: list[np.ndarray]
    weights: np.ndarray
    values: dict[int, np.ndarray] = field(default_factory=dict)

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*self.ranges, indexing="ij")


def lattice(W: WeightSpec, P: float, guard: int = LATTICE_GUARD) -> LatticeData:
    ranges, grid = lattice_points(W, P, guard)
    return LatticeData(ranges, grid)


def _values(F: IntPolynomial, lat: LatticeData) -> np.ndarray:
    v = F.eval_array(lat.mesh())
    if v.dtype == object:
        raise GuardError("polynomial values exceed int64 on this lattice")
    return v


def _phase(Fv: np.ndarray, alpha) -> np.ndarray:
    """e(alpha F) with exact reduction when alpha is rational."""
    if isinstance(alpha, (Fraction, int)):
        a = Fraction(alpha)
        return e_mod(a.denominator, (a.numerator % a.denominator) * (Fv % a.denominator))
    return np.exp(2j * np.pi * float(alpha) * Fv.astype(float))


def _rat_float_phase(Fv: np.ndarray, a: int, q: int, z: float) -> np.ndarray:
    return e_mod(q, (a % q) * (Fv % q)) * np.exp(2j * np.pi * z * Fv.astype(float))


def S_alpha(F: IntPolynomial, W: WeightSpec, P: float, alpha) -> complex:
    """sum_x W(x/P) e(alpha F(x)); alpha may be a Fraction (exact residues) or a float."""
    lat = lattice(W, P)
    Fv = _values(F, lat)
    return complex(np.sum(lat.weights * _phase(Fv, alpha)))


def S_at(F: IntPolynomial, W: WeightSpec, P: float, a: int, q: int, z: float) -> complex:
    """S(a/q + z) with the rational part reduced exactly."""
    lat = lattice(W, P)
    Fv = _values(F, lat)
    return complex(np.sum(lat.weights * _rat_float_phase(Fv, a, q, z)))


def S_qz(F: IntPolynomial, W: WeightSpec, P: float, q: int, z: float) -> complex:
    """sum*_{a mod q} S(a/q + z), with the a-sum collapsed to c_q(F(x))."""
    lat = lattice(W, P)
    Fv = _values(F, lat)
    return complex(np.sum(lat.weights * ramanujan_values(q, Fv) * np.exp(2j * np.pi * z * Fv.astype(float))))


def S_qz_direct(F: IntPolynomial, W: WeightSpec, P: float, q: int, z: float) -> complex:
    """Reference: explicit loop over reduced residues a."""
    lat = lattice(W, P)
    Fv = _values(F, lat)
    return complex(
        sum(np.sum(lat.weights * _rat_float_phase(Fv, a, q, z)) for a in range(1, q + 1) if math.gcd(a, q) == 1)
    )


def vdc_sum(F: IntPolynomial, W: WeightSpec, P: int, q: int, z: float, a: int, h: Sequence[int]) -> complex:
    """The differenced sum T_{a,h}(q, z), with the (s1, s2)-sum over b1 collapsed to Ramanujan sums."""
    fac = factorize_modulus(q)
    if math.gcd(a, fac.q2) != 1:
        raise ValueError("a must be coprime to the square-full part of q")
    Fh = difference(F, h)
    if W.kind != "gamma-product":
        raise ValueError("vdc_sum expects a gamma-product base weight")
    Wh = W.differenced(h, P)
    lat = lattice(Wh, P)
    if lat.weights.size == 0:
        return 0j
    mesh = lat.mesh()
    Fv = F.eval_array(mesh)
    Fhv = Fh.eval_array(mesh) if not Fh.is_zero() else np.zeros_like(Fv)
    b1, q2 = fac.b1, fac.q2
    A = ramanujan_values(b1, Fhv + Fv) * ramanujan_values(b1, Fv)
    ph = e_mod(q2, (a % q2) * (Fhv % q2)) * np.exp(2j * np.pi * z * Fhv.astype(float))
    return complex(np.sum(lat.weights * A * ph))


def vdc_trivial_bound(F: IntPolynomial, W: WeightSpec, P: int, q: int, h: Sequence[int]) -> float:
    """b1^2 sum_x W_h(x/P), the triangle-inequality bound for |T_{a,h}(q, z)|."""
    b1 = factorize_modulus(q).b1
    lat = lattice(W.differenced(h, P), P)
    return float(b1 * b1 * np.sum(lat.weights))


# ---------------------------------------------------------------------------
# oscillatory integrals


def _support_grid(w: WeightSpec, N: int) -> tuple[list[np.ndarray], list[float]]:
    """Midpoint nodes on the support box, N per axis, with the step in each axis."""
    nodes, steps = [], []
    for lo, hi in w.box():
        if hi <= lo:
            return [], []
        step = (hi - lo) / N
        nodes.append(lo + step * (np.arange(N) + 0.5))
        steps.append(step)
    return nodes, steps


def _integrand_grid(w: WeightSpec, g: IntPolynomial, P: float, z: float, nodes: list[np.ndarray]) -> np.ndarray:
    facs = [coordinate_factors(w, j, y) for j, y in enumerate(nodes)]
    W = facs[0]
    for f in facs[1:]:
        W = np.multiply.outer(W, f)
    mesh = np.meshgrid(*[P * y for y in nodes], indexing="ij")
    gv = g.eval_float(mesh) if not g.is_zero() else np.zeros(W.shape)
    return W * np.exp(2j * np.pi * z * gv)


def oscillatory_I_grid(
    w: WeightSpec,
    g: IntPolynomial,
    P: float,
    z: float,
    freqs: Sequence[np.ndarray],
    N: int = 64,
    tol: float = 1e-9,
    max_doublings: int = 8,
) -> np.ndarray:
    """I(z, xi) = int w(x/P) e(z g(x) - xi.x) dx for xi on the product grid freqs[0] x ... x freqs[n-1].

    After the substitution x = P y the integrand is smooth and compactly
    supported, so the midpoint rule converges rapidly; N is doubled until the
    maximal change is below tol times the largest modulus.
    """
    n = w.n_vars
    if len(freqs) != n:
        raise ValueError("dimension mismatch")

    def at(Nn: int) -> np.ndarray:
        nodes, steps = _support_grid(w, Nn)
        if not nodes:
            return np.zeros(tuple(len(f) for f in freqs), dtype=complex)
        M = _integrand_grid(w, g, P, z, nodes)
        out = M
        for j in range(n):
            E = np.exp(-2j * np.pi * P * np.outer(np.asarray(freqs[j], float), nodes[j])) * steps[j]
            out = np.tensordot(out, E, axes=([0], [1]))
        return out * P**n

    prev = at(N)
    for _ in range(max_doublings):
        N *= 2
        cur = at(N)
        scale = max(float(np.max(np.abs(cur))), 1e-300)
        if float(np.max(np.abs(cur - prev))) <= tol * scale:
            return cur
        prev = cur
    raise QuadratureError("oscillatory integral did not stabilise")


def oscillatory_I(w: WeightSpec, g: IntPolynomial, P: float, z: float, v: Sequence[float], **kw) -> complex:
    return complex(oscillatory_I_grid(w, g, P, z, [np.array([vi]) for vi in v], **kw).ravel()[0])


# ---------------------------------------------------------------------------
# Poisson summation


@dataclass
class PoissonReport:
    q: int
    z: float
    direct: complex
    dual: complex
    truncation: int
    rel_error: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "z": self.z,
            "direct": [self.direct.real, self.direct.imag],
            "dual": [self.dual.real, self.dual.imag],
            "truncation": self.truncation,
            "rel_error": self.rel_error,
        }


def poisson_direct(
    f: IntPolynomial, g: IntPolynomial, w: WeightSpec, P: float, q: int, a: int, z: float
) -> complex:
    """sum_{x in Z^n} w(x/P) A(x mod q) e(z g(x)) with A the summand of S(q, .)."""
    lat = lattice(w, P)
    mesh = lat.mesh()
    A = S_complete_weight(q, f, g, a)
    idx = tuple(np.mod(m, q) for m in mesh)
    gv = g.eval_array(mesh).astype(float) if not g.is_zero() else 0.0
    return complex(np.sum(lat.weights * A[idx] * np.exp(2j * np.pi * z * gv)))


def poisson_dual(
    f: IntPolynomial,
    g: IntPolynomial,
    w: WeightSpec,
    P: float,
    q: int,
    a: int,
    z: float,
    V: int,
) -> complex:
    """q^{-n} sum_{|v_i| <= V} S(q, v) I(z, v/q)."""
    n = f.n_vars
    S_all = S_complete_all(q, f, g, a)
    vs = np.arange(-V, V + 1)
    I = oscillatory_I_grid(w, g, P, z, [vs / q] * n)
    idx = np.meshgrid(*([np.mod(vs, q)] * n), indexing="ij")
    return complex(np.sum(S_all[tuple(idx)] * I) / q**n)


def poisson_check(
    f: IntPolynomial,
    g: IntPolynomial,
    w: WeightSpec,
    P: float,
    q: int,
    a: int,
    z: float,
    V0: int = 4,
    tol: float = 1e-6,
    V_max: int = 512,
) -> PoissonReport:
    """Compare both sides of the Poisson identity, doubling the dual truncation until stable.

    Relative errors use max(|direct|, floor) with floor = 1e-6 * sum_x w(x/P),
    so an exactly cancelling instance does not divide by rounding noise.
    """
    direct = poisson_direct(f, g, w, P, q, a, z)
    floor = 1e-6 * float(np.sum(lattice(w, P).weights))
    V = V0
    prev = poisson_dual(f, g, w, P, q, a, z, V)
    while True:
        V *= 2
        if V > V_max:
            raise QuadratureError("dual sum did not stabilise")
        cur = poisson_dual(f, g, w, P, q, a, z, V)
        if abs(cur - prev) <= tol * max(abs(cur), floor):
            break
        prev = cur
    rel = abs(direct - cur) / max(abs(direct), floor)
    return PoissonReport(q, z, direct, cur, V, rel)


# ---------------------------------------------------------------------------
# pointwise van der Corput inequality


@dataclass
class VdcReport:
    q: int
    z: float
    H: int
    lhs: float
    rhs: float
    rhs_tight: float
    box_constant: float
    ratio: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def vdc_inequality_check(F: IntPolynomial, W: WeightSpec, P: int, q: int, z: float, H: int) -> VdcReport:
    """Both sides of |S(q,z)| <= sum*_{a mod q2} (N_y H^{-n} sum_{|h| < H} |T_{a,h}(q,z)|)^{1/2}.

    N_y counts the integer y for which some y + h (h in {1..H}^n) lies in the
    lattice box of P supp(W); the Cauchy-Schwarz step with N(h) <= H^n gives
    the inequality with this constant exactly, so the ratio must be <= 1.
    ``rhs_tight`` keeps the exact multiplicities N(h).
    """
    if H < 1:
        raise ValueError("H must be positive")
    n = F.n_vars
    fac = factorize_modulus(q)
    lat = lattice(W, P)
    N_y = math.prod(len(r) + H for r in lat.ranges)
    lhs = abs(S_qz(F, W, P, q, z))
    hs = list(np.ndindex(*([2 * H - 1] * n)))
    rhs = rhs_tight = 0.0
    for a in range(1, fac.q2 + 1):
        if math.gcd(a, fac.q2) != 1:
            continue
        tot_abs = tot_tight = 0.0
        for idx in hs:
            h = tuple(int(k) - (H - 1) for k in idx)
            T = vdc_sum(F, W, P, q, z, a, h)
            Nh = math.prod(H - abs(k) for k in h)
            tot_abs += abs(T)
            tot_tight += Nh * T.real
        rhs += math.sqrt(N_y / H**n * tot_abs)
        rhs_tight += math.sqrt(max(N_y / H ** (2 * n) * tot_tight, 0.0))
    # (N_y / P^n)^{1/2}, the constant in the P^{n/2} H^{-n/2} normalisation
    C = math.sqrt(N_y / P**n)
    return VdcReport(q, z, H, lhs, rhs, rhs_tight, C, lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf))
