"""Elementary arithmetic helpers: factorisation, Moebius, Ramanujan sums, CRT data."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
import sympy


@lru_cache(maxsize=4096)
def factorint(q: int) -> tuple[tuple[int, int], ...]:
    if q < 1:
        raise ValueError("q must be positive")
    return tuple(sorted(sympy.factorint(q).items()))


def mobius(q: int) -> int:
    f = factorint(q)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def totient(q: int) -> int:
    out = q
    for p, _ in factorint(q):
        out = out // p * (p - 1)
    return out


def divisors(q: int) -> list[int]:
    ds = [1]
    for p, e in factorint(q):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def is_squarefree(q: int) -> bool:
    return all(e == 1 for _, e in factorint(q))


def primes_upto(n: int) -> list[int]:
    return list(sympy.primerange(2, n + 1))


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) = sum over reduced a mod q of e(an/q), via the Moebius formula."""
    g = math.gcd(q, n)
    return sum(mobius(q // d) * d for d in divisors(g))


@lru_cache(maxsize=256)
def _ramanujan_table(q: int) -> np.ndarray:
    """c_q(r) for r = 0, ..., q-1 by von Sterneck's formula mu(q/g) phi(q)/phi(q/g), g = (q, r)."""
    r = np.arange(q, dtype=np.int64)
    g = np.gcd(r, q)
    vals = {}
    for d in np.unique(g):
        d = int(d)
        m = q // d
        vals[d] = mobius(m) * (totient(q) // totient(m))
    out = np.zeros(q, dtype=np.int64)
    for d, v in vals.items():
        out[g == d] = v
    out.setflags(write=False)
    return out


def ramanujan_table(q: int) -> np.ndarray:
    return _ramanujan_table(q)


def ramanujan_values(q: int, m: np.ndarray) -> np.ndarray:
    """Elementwise c_q(m) for an integer array m."""
    return _ramanujan_table(q)[np.mod(m, q)]


def crt_pair(r: int, s: int) -> tuple[int, int]:
    """(rbar, sbar) with r*rbar + s*sbar = 1 and rbar the inverse of r mod s."""
    if math.gcd(r, s) != 1:
        raise ValueError("moduli must be coprime")
    rbar = pow(r, -1, s) if s > 1 else 0
    sbar = (1 - r * rbar) // s
    return rbar, sbar


@lru_cache(maxsize=256)
def roots_of_unity(q: int) -> np.ndarray:
    """e(k/q) for k = 0, ..., q-1, computed from exact residues."""
    k = np.arange(q)
    out = np.exp(2j * np.pi * k / q)
    out.setflags(write=False)
    return out


def e_mod(q: int, k: np.ndarray) -> np.ndarray:
    """e(k/q) for integer arrays k, reducing mod q before exponentiation."""
    return roots_of_unity(q)[np.mod(k, q)]


_PI_LD = np.longdouble("3.14159265358979323846264338327950288")


def phase_sum(weights: np.ndarray, k: np.ndarray, q: int) -> complex:
    """sum_x weights(x) e(k(x)/q) for integer weights, accurate beyond double precision.

    The weights are first binned by k mod q (exactly, as long as the bin
    totals stay below 2^53), and the q remaining terms are accumulated in
    extended precision.
    """
    w = np.asarray(weights)
    if w.dtype.kind not in "iu":
        raise TypeError("integer weights expected")
    B = np.bincount(np.mod(k, q).ravel(), weights=w.ravel().astype(np.float64), minlength=q).astype(np.longdouble)
    theta = 2 * _PI_LD * np.arange(q, dtype=np.longdouble) / q
    return complex(float(np.sum(B * np.cos(theta))), float(np.sum(B * np.sin(theta))))
