"""Complete exponential sums modulo q and their multiplicative structure.

The double sum over reduced s1, s2 that appears in T(q, v) factors as a
product of two Ramanujan sums, since

    sum*_{s1, s2} e_q(s1 g + (s1 - s2) f) = c_q(f + g) c_q(f),

so each complete sum is a discrete Fourier transform of an integer array on
(Z/q)^n.  Direct triple loops are kept as reference implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

import numpy as np

from ..arith import crt_pair, e_mod, factorint, phase_sum, ramanujan_values
from ..errors import GuardError
from ..poly import IntPolynomial, gradient, hessian

ENUM_GUARD = 10**7


@dataclass(frozen=True)
class ModulusFactorization:
    """q = b1 * b2 * q3 with b_i = prod_{p^i || q} p^i, q3 cube-full, and q3 = c^2 d with d squarefree."""

    q: int
    b1: int
    b2: int
    q3: int
    c: int
    d: int

    @property
    def q2(self) -> int:
        """Square-full part b2 * q3."""
        return self.b2 * self.q3


def factorize_modulus(q: int) -> ModulusFactorization:
    if q < 1:
        raise ValueError("q must be positive")
    b1 = b2 = q3 = c = d = 1
    for p, e in factorint(q):
        if e == 1:
            b1 *= p
        elif e == 2:
            b2 *= p * p
        else:
            q3 *= p**e
            c *= p ** (e // 2)
            if e % 2:
                d *= p
    return ModulusFactorization(q, b1, b2, q3, c, d)


@dataclass(frozen=True)
class CompleteSumSpec:
    q: int
    f: IntPolynomial
    g: IntPolynomial
    a: int
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.v) != self.f.n_vars or self.g.n_vars != self.f.n_vars:
            raise ValueError("dimension mismatch")


def _guard(size: int, guard: int = ENUM_GUARD) -> None:
    if size > guard:
        raise GuardError(f"enumeration of {size} residues exceeds guard {guard}")


def _linear_phase(q: int, v: Sequence[int], n: int) -> np.ndarray:
    """v . x mod q on the grid (Z/q)^n."""
    out = np.zeros((q,) * n, dtype=np.int64)
    for i, vi in enumerate(v):
        shape = [1] * n
        shape[i] = q
        out = out + (int(vi) % q) * np.arange(q, dtype=np.int64).reshape(shape)
    return out % q


def Z_eval(r: int, x: int, y: int) -> int:
    """sum*_{s1, s2 mod r} e_r(s1 x - s2 y), as a product of prime-power factors."""
    if r < 1:
        raise ValueError("r must be positive")
    out = 1
    for p, e in factorint(r):
        out *= _ram_prime_power(p, e, x) * _ram_prime_power(p, e, y)
    return out


def _ram_prime_power(p: int, e: int, m: int) -> int:
    pe = p**e
    if m % pe == 0:
        return pe - pe // p
    if m % (pe // p) == 0:
        return -(pe // p)
    return 0


def ramanujan_weight(q: int, f: IntPolynomial, g: IntPolynomial) -> np.ndarray:
    """c_q((f+g)(x)) c_q(f(x)) on (Z/q)^n."""
    _guard(q**f.n_vars)
    fv = f.grid_mod(q)
    fg = (fv + g.grid_mod(q)) % q
    return ramanujan_values(q, fg) * ramanujan_values(q, fv)


def _dft_all(A: np.ndarray, q: int) -> np.ndarray:
    """sum_x A(x) e_q(v.x) for every v mod q."""
    n = A.ndim
    return np.fft.ifftn(A) * q**n


def T_complete(q: int, f: IntPolynomial, g: IntPolynomial, v: Sequence[int]) -> complex:
    """T(q, v; f, g) = sum_{x mod q} sum*_{s1, s2} e_q(s1 g(x) + (s1 - s2) f(x) + v.x)."""
    if len(v) != f.n_vars:
        raise ValueError("dimension mismatch")
    if q == 1:
        return 1.0 + 0j
    return phase_sum(ramanujan_weight(q, f, g), _linear_phase(q, v, f.n_vars), q)


def T_complete_all(q: int, f: IntPolynomial, g: IntPolynomial) -> np.ndarray:
    """T(q, v) for all v mod q, indexed by v."""
    return _dft_all(ramanujan_weight(q, f, g).astype(float), q)


def T_complete_direct(q: int, f: IntPolynomial, g: IntPolynomial, v: Sequence[int]) -> complex:
    """Reference triple loop over x and reduced s1, s2."""
    n = f.n_vars
    _guard(q**n * q * q, 10**7)
    fv = f.grid_mod(q).ravel()
    gv = g.grid_mod(q).ravel()
    lin = _linear_phase(q, v, n).ravel()
    units = [s for s in range(1, q + 1) if math.gcd(s, q) == 1]
    total = 0j
    for s1 in units:
        for s2 in units:
            total += np.sum(e_mod(q, s1 * gv + (s1 - s2) * fv + lin))
    return complex(total)


def T_star(q: int, a: int, g: IntPolynomial, v: Sequence[int]) -> complex:
    """T*_a(q, v) = sum_{x mod q} e_q(a g(x) + v.x)."""
    if math.gcd(a, q) != 1:
        raise ValueError("a must be coprime to q")
    if len(v) != g.n_vars:
        raise ValueError("dimension mismatch")
    _guard(q**g.n_vars)
    phase = (a % q) * g.grid_mod(q) + _linear_phase(q, v, g.n_vars)
    return phase_sum(np.ones(phase.shape, dtype=np.int64), phase, q)


def T_star_all(q: int, a: int, g: IntPolynomial) -> np.ndarray:
    if math.gcd(a, q) != 1:
        raise ValueError("a must be coprime to q")
    _guard(q**g.n_vars)
    return _dft_all(e_mod(q, (a % q) * g.grid_mod(q)), q)


def S_complete_weight(q: int, f: IntPolynomial, g: IntPolynomial, a: int) -> np.ndarray:
    """The summand of S(q, v) before the linear character, on (Z/q)^n.

    c_{b1}((f+g)(x)) c_{b1}(f(x)) e_{q2}(a g(x)), with b1 the squarefree part
    and q2 = q / b1 the square-full part.
    """
    fac = factorize_modulus(q)
    b1, q2 = fac.b1, fac.q2
    if math.gcd(a, q2) != 1:
        raise ValueError("a must be coprime to the square-full part")
    _guard(q**f.n_vars)
    fv = f.grid_mod(q)
    gv = g.grid_mod(q)
    A = ramanujan_values(b1, fv + gv) * ramanujan_values(b1, fv)
    return A * e_mod(q2, (a % q2) * gv)


def S_complete(q: int, f: IntPolynomial, g: IntPolynomial, a: int, v: Sequence[int]) -> complex:
    """S(q, v) = sum_{x mod q} sum*_{s1,s2 mod b1} e_{b1}(s1 g + (s1-s2) f) e_{q2}(a g) e_q(v.x)."""
    if len(v) != f.n_vars:
        raise ValueError("dimension mismatch")
    if q == 1:
        return 1.0 + 0j
    # e_{q2}(a g) = e_q(b1 a g), so the summand is an integer times one root of unity
    fac = factorize_modulus(q)
    if math.gcd(a, fac.q2) != 1:
        raise ValueError("a must be coprime to the square-full part")
    _guard(q**f.n_vars)
    fv = f.grid_mod(q)
    gv = g.grid_mod(q)
    A = ramanujan_values(fac.b1, fv + gv) * ramanujan_values(fac.b1, fv)
    k = fac.b1 * (a % fac.q2) * gv + _linear_phase(q, v, f.n_vars)
    return phase_sum(A, k, q)


def S_complete_all(q: int, f: IntPolynomial, g: IntPolynomial, a: int) -> np.ndarray:
    return _dft_all(S_complete_weight(q, f, g, a), q)


@dataclass(frozen=True)
class CRTSplit:
    r: int
    s: int
    v_r: tuple[int, ...]
    v_s: tuple[int, ...]
    rbar: int
    sbar: int


def crt_split(r: int, s: int, v: Sequence[int] = ()) -> CRTSplit:
    """Bezout data r*rbar + s*sbar = 1 and the twisted vectors sbar*v mod r, rbar*v mod s."""
    rbar, sbar = crt_pair(r, s)
    v_r = tuple((sbar * vi) % r for vi in v)
    v_s = tuple((rbar * vi) % s for vi in v)
    return CRTSplit(r, s, v_r, v_s, rbar, sbar)


def T_product_side(r: int, s: int, f: IntPolynomial, g: IntPolynomial, v: Sequence[int]) -> complex:
    """T(r, sbar v; sbar f, sbar g) T(s, rbar v; rbar f, rbar g)."""
    sp = crt_split(r, s, v)
    fr, gr = f.scale_coeffs_mod(sp.sbar, r), g.scale_coeffs_mod(sp.sbar, r)
    fs, gs = f.scale_coeffs_mod(sp.rbar, s), g.scale_coeffs_mod(sp.rbar, s)
    return T_complete(r, fr, gr, sp.v_r) * T_complete(s, fs, gs, sp.v_s)


def T_star_product_side(r: int, s: int, a: int, g: IntPolynomial, v: Sequence[int]) -> complex:
    """T*_{sbar a}(r, sbar v) T*_{rbar a}(s, rbar v)."""
    sp = crt_split(r, s, v)
    left = 1.0 + 0j if r == 1 else T_star(r, (sp.sbar * a) % r, g, sp.v_r)
    right = 1.0 + 0j if s == 1 else T_star(s, (sp.rbar * a) % s, g, sp.v_s)
    return left * right


def S_product_side(q: int, f: IntPolynomial, g: IntPolynomial, a: int, v: Sequence[int]) -> complex:
    """T(b1, q2bar v) T*_a(q2, b1bar v) with b1 b1bar + q2 q2bar = 1."""
    fac = factorize_modulus(q)
    b1, q2 = fac.b1, fac.q2
    sp = crt_split(b1, q2, v)
    left = 1.0 + 0j if b1 == 1 else T_complete(b1, f, g, sp.v_r)
    right = 1.0 + 0j if q2 == 1 else T_star(q2, a % q2, g, sp.v_s)
    return left * right


def M_d(g: IntPolynomial, d: int, s: Sequence[int]) -> int:
    """#{t mod d : Hess(g)(s) t = 0 mod d} for squarefree d, counted prime by prime."""
    n = g.n_vars
    H = [[int(h(tuple(s))) for h in row] for row in hessian(g)]
    out = 1
    for p, e in factorint(d):
        if e != 1:
            raise ValueError("d must be squarefree")
        out *= p ** (n - _rank_mod_p(H, p))
    return out


def _rank_mod_p(M: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [(x * inv) % p for x in A[rank]]
        for i in range(rows):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def M_d_bruteforce(g: IntPolynomial, d: int, s: Sequence[int]) -> int:
    H = [[int(h(tuple(s))) for h in row] for row in hessian(g)]
    cnt = 0
    for t in iproduct(range(d), repeat=g.n_vars):
        if all(sum(Hi[j] * t[j] for j in range(len(t))) % d == 0 for Hi in H):
            cnt += 1
    return cnt


def P_sum(g: IntPolynomial, c: int, d: int, a: int, v: Sequence[int]) -> float:
    """sum over s mod c with c | a grad g(s) + v of M_d(s)^{1/2}."""
    if c * c * d > 10**6:
        raise GuardError("c^2 d exceeds guard")
    grad = gradient(g)
    total = 0.0
    for s in iproduct(range(c), repeat=g.n_vars):
        if all((a * int(gi(s)) + vi) % c == 0 for gi, vi in zip(grad, v)):
            total += math.sqrt(M_d(g, d, s))
    return total
