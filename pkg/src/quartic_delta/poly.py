"""Sparse integer polynomials in several variables.

Polynomials are immutable; terms are stored in graded lexicographic order so
that serialised forms are stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]


def _grlex_key(e: Exponent) -> tuple:
    return (-sum(e), tuple(-k for k in e))


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients in ``n_vars`` variables."""

    n_vars: int
    terms: tuple[tuple[Exponent, int], ...]

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise ValueError("n_vars must be positive")
        for e, c in self.terms:
            if len(e) != self.n_vars or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e}")
            if c == 0:
                raise ValueError("zero coefficient stored")

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, n_vars: int, coeffs: Mapping[Exponent, int]) -> "IntPolynomial":
        items = [(tuple(int(k) for k in e), int(c)) for e, c in coeffs.items() if int(c) != 0]
        items.sort(key=lambda ec: _grlex_key(ec[0]))
        return cls(n_vars, tuple(items))

    @classmethod
    def zero(cls, n_vars: int) -> "IntPolynomial":
        return cls(n_vars, ())

    @classmethod
    def constant(cls, n_vars: int, c: int) -> "IntPolynomial":
        return cls.from_dict(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "IntPolynomial":
        e = [0] * n_vars
        e[i] = 1
        return cls.from_dict(n_vars, {tuple(e): 1})

    @classmethod
    def diagonal(cls, coeffs: Sequence[int], degree: int = 4) -> "IntPolynomial":
        n = len(coeffs)
        d = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = degree
            d[tuple(e)] = c
        return cls.from_dict(n, d)

    # basic properties -------------------------------------------------
    @property
    def coeffs(self) -> dict[Exponent, int]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def norm(self) -> int:
        """Maximum modulus of the coefficients."""
        return max((abs(c) for _, c in self.terms), default=0)

    def diagonal_coeffs(self) -> tuple[int, ...] | None:
        """Coefficients c_i if the polynomial is sum c_i x_i^d, else None."""
        d = self.degree
        out = [0] * self.n_vars
        for e, c in self.terms:
            nz = [i for i, k in enumerate(e) if k]
            if len(nz) != 1 or e[nz[0]] != d:
                return None
            out[nz[0]] = c
        return tuple(out)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "IntPolynomial") -> None:
        if self.n_vars != other.n_vars:
            raise ValueError("dimension mismatch")

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        self._check(other)
        d = self.coeffs
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return IntPolynomial.from_dict(self.n_vars, d)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.n_vars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial.from_dict(self.n_vars, {e: c * other for e, c in self.terms})
        self._check(other)
        d: dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return IntPolynomial.from_dict(self.n_vars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial.constant(self.n_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    # evaluation -------------------------------------------------------
    def __call__(self, x: Sequence) -> object:
        """Exact evaluation at a point (ints, Fractions or floats)."""
        if len(x) != self.n_vars:
            raise ValueError("dimension mismatch")
        total = 0
        for e, c in self.terms:
            m = c
            for xi, k in zip(x, e):
                if k:
                    m = m * xi**k
            total = total + m
        return total

    def eval_array(self, grids: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised integer evaluation; falls back to object arrays on overflow risk."""
        arrs = [np.asarray(g) for g in grids]
        shape = np.broadcast_shapes(*(a.shape for a in arrs))
        xmax = max((int(np.abs(a).max()) if a.size else 0) for a in arrs)
        bound = sum(abs(c) * max(xmax, 1) ** sum(e) for e, c in self.terms)
        dtype = np.int64 if bound < 2**62 else object
        arrs = [a.astype(dtype) for a in arrs]
        out = np.zeros(shape, dtype=dtype)
        for e, c in self.terms:
            m = np.full(shape, c, dtype=dtype)
            for a, k in zip(arrs, e):
                if k:
                    m = m * a**k
            out = out + m
        return out

    def eval_float(self, grids: Sequence[np.ndarray]) -> np.ndarray:
        arrs = [np.asarray(g, dtype=float) for g in grids]
        shape = np.broadcast_shapes(*(a.shape for a in arrs))
        out = np.zeros(shape)
        for e, c in self.terms:
            m = np.full(shape, float(c))
            for a, k in zip(arrs, e):
                if k:
                    m = m * a**k
            out = out + m
        return out

    def eval_mod(self, q: int, grids: Sequence[np.ndarray]) -> np.ndarray:
        """Values mod q on integer grids, reducing after every product."""
        if q >= 3 * 10**9:
            raise ValueError("modulus too large for int64 reduction")
        arrs = [np.asarray(g, dtype=np.int64) % q for g in grids]
        shape = np.broadcast_shapes(*(a.shape for a in arrs))
        out = np.zeros(shape, dtype=np.int64)
        powers: dict[tuple[int, int], np.ndarray] = {}

        def pw(i: int, k: int) -> np.ndarray:
            if (i, k) not in powers:
                powers[(i, k)] = arrs[i] if k == 1 else (pw(i, k - 1) * arrs[i]) % q
            return powers[(i, k)]

        for e, c in self.terms:
            m = np.full(shape, c % q, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    m = (m * pw(i, k)) % q
            out = (out + m) % q
        return out

    def grid_mod(self, q: int) -> np.ndarray:
        """Array of f(x) mod q for x over (Z/q)^n, indexed as x[0], ..., x[n-1]."""
        axes = np.meshgrid(*([np.arange(q)] * self.n_vars), indexing="ij", sparse=True)
        return self.eval_mod(q, axes)

    # transformations --------------------------------------------------
    def shift(self, h: Sequence[int]) -> "IntPolynomial":
        """The polynomial x -> f(x + h)."""
        if len(h) != self.n_vars:
            raise ValueError("dimension mismatch")
        d: dict[Exponent, int] = {}
        for e, c in self.terms:
            ranges = [range(k + 1) for k in e]
            for sub in product(*ranges):
                coef = c
                for k, j, hi in zip(e, sub, h):
                    coef *= math.comb(k, j) * hi ** (k - j)
                if coef:
                    d[sub] = d.get(sub, 0) + coef
        return IntPolynomial.from_dict(self.n_vars, d)

    def scale_coeffs_mod(self, s: int, q: int) -> "IntPolynomial":
        """Coefficients multiplied by s and reduced to [0, q)."""
        return IntPolynomial.from_dict(self.n_vars, {e: (c * s) % q for e, c in self.terms})

    def derivative(self, i: int) -> "IntPolynomial":
        d: dict[Exponent, int] = {}
        for e, c in self.terms:
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                d[tuple(e2)] = d.get(tuple(e2), 0) + c * e[i]
        return IntPolynomial.from_dict(self.n_vars, d)

    def homogeneous_part(self, k: int) -> "IntPolynomial":
        return IntPolynomial.from_dict(self.n_vars, {e: c for e, c in self.terms if sum(e) == k})

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n_vars, "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms]}

    @classmethod
    def from_json(cls, data: dict | str) -> "IntPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "n" not in data or "terms" not in data:
            raise ValueError("polynomial JSON needs keys 'n' and 'terms'")
        n = int(data["n"])
        d: dict[Exponent, int] = {}
        for t in data["terms"]:
            e = tuple(int(k) for k in t["e"])
            c = t["c"]
            if isinstance(c, bool) or not isinstance(c, (str, int)):
                raise ValueError("coefficient must be a decimal string")
            c = int(str(c).strip())
            if len(e) != n:
                raise ValueError("exponent length does not match n")
            d[e] = d.get(e, 0) + c
        return cls.from_dict(n, d)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


@dataclass(frozen=True)
class ScaledNorm:
    value: Fraction

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("norm must be non-negative")


def difference(F: IntPolynomial, h: Sequence[int]) -> IntPolynomial:
    """F(x + h) - F(x)."""
    if len(h) != F.n_vars:
        raise ValueError("dimension mismatch")
    return F.shift(h) - F


def leading_form(f: IntPolynomial) -> IntPolynomial:
    if f.is_zero():
        raise ValueError("zero polynomial has no leading form")
    return f.homogeneous_part(f.degree)


def scaled_norm(f: IntPolynomial, P: Fraction | int) -> ScaledNorm:
    """Largest coefficient of P^{-deg f} f(P x), exactly."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    P = Fraction(P)
    if P < 1:
        raise ValueError("P must be at least 1")
    d = f.degree
    return ScaledNorm(max(abs(Fraction(c) * P ** (sum(e) - d)) for e, c in f.terms))


def gradient(f: IntPolynomial) -> tuple[IntPolynomial, ...]:
    return tuple(f.derivative(i) for i in range(f.n_vars))


def hessian(f: IntPolynomial) -> tuple[tuple[IntPolynomial, ...], ...]:
    g = gradient(f)
    return tuple(tuple(gi.derivative(j) for j in range(f.n_vars)) for gi in g)


def content(f: IntPolynomial) -> int:
    g = 0
    for _, c in f.terms:
        g = math.gcd(g, c)
    return g


def univariate_coeffs(f: IntPolynomial) -> list[int]:
    """Coefficient list from the leading term down."""
    if f.n_vars != 1:
        raise ValueError("univariate polynomial expected")
    d = f.degree
    out = [0] * (d + 1)
    for (k,), c in f.terms:
        out[d - k] = c
    return out


def integer_determinant(m: list[list[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    fc, gc = univariate_coeffs(f), univariate_coeffs(g)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant_univariate(f: IntPolynomial, g: IntPolynomial) -> int:
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined here")
    if f.degree == 0 and g.degree == 0:
        return 1
    return integer_determinant(sylvester_matrix(f, g))


def parse_polynomial(text: str, n_vars: int | None = None) -> IntPolynomial:
    """Parse an expression such as ``x1^4 + 2*x2^4 - x3^4`` via sympy."""
    import sympy

    expr = sympy.sympify(text.replace("^", "**"))
    names = sorted((str(s) for s in expr.free_symbols), key=lambda s: int(s[1:]))
    n = n_vars or (int(names[-1][1:]) if names else 1)
    syms = sympy.symbols(f"x1:{n + 1}")
    poly = sympy.Poly(expr, *syms)
    d = {}
    for e, c in poly.terms():
        if c != int(c):
            raise ValueError("non-integer coefficient")
        d[tuple(e)] = int(c)
    return IntPolynomial.from_dict(n, d)


def monomials_of_degree(n: int, d: int) -> Iterable[Exponent]:
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - k):
            yield (k,) + rest
