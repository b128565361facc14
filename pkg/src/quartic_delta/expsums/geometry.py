"""Singular loci of leading forms over finite fields.

Dimensions come from a Groebner basis over F_p: the affine cone of an ideal
has dimension equal to the largest set of variables that contains the support
of no leading monomial.  Point counts over F_p give an independent sanity
check but cannot be authoritative (a positive-dimensional variety may have few
rational points).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np
import sympy

from ..errors import GuardError
from ..poly import IntPolynomial, gradient, leading_form

POINT_GUARD = 10**7


def _symbols(n: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"x1:{n + 1}")


def _to_sympy(f: IntPolynomial) -> sympy.Expr:
    xs = _symbols(f.n_vars)
    return sympy.Add(*[c * sympy.Mul(*[x**k for x, k in zip(xs, e)]) for e, c in f.terms])


def _reduce(f: IntPolynomial, p: int) -> IntPolynomial:
    return IntPolynomial.from_dict(f.n_vars, {e: c % p for e, c in f.terms if c % p})


def _cone_dimension(leading: Sequence[tuple[int, ...]], n: int) -> int:
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in leading]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def projective_dimension(polys: Sequence[IntPolynomial], p: int) -> int:
    """Dimension of the projective zero set in P^{n-1} over the algebraic closure of F_p (-1 if empty)."""
    n = polys[0].n_vars
    red = [q for q in (_reduce(f, p) for f in polys) if not q.is_zero()]
    if not red:
        return n - 1
    return _projective_dimension_cached(tuple(red), p)


@lru_cache(maxsize=None)
def _projective_dimension_cached(red: tuple[IntPolynomial, ...], p: int) -> int:
    n = red[0].n_vars
    xs = _symbols(n)
    G = sympy.groebner([_to_sympy(f) for f in red], *xs, modulus=p, order="grevlex")
    leading = [sympy.Poly(g, *xs, modulus=p).monoms(order="grevlex")[0] for g in G.exprs]
    # a projective variety is empty exactly when its cone is the origin
    return _cone_dimension(leading, n) - 1


def projective_point_count(polys: Sequence[IntPolynomial], p: int, guard: int = POINT_GUARD) -> int:
    """Number of F_p-points of the common zero set in P^{n-1}."""
    n = polys[0].n_vars
    if p**n > guard:
        raise GuardError(f"{p}^{n} points exceed guard {guard}")
    grids = list(np.meshgrid(*([np.arange(p, dtype=np.int64)] * n), indexing="ij"))
    mask = np.ones((p,) * n, dtype=bool)
    for f in polys:
        mask &= f.eval_mod(p, grids) == 0
    return (int(mask.sum()) - 1) // (p - 1)


def dimension_from_count(count: int, p: int, n: int) -> int:
    """The d in [-1, n-1] whose projective space P^d(F_p) has point count closest to ``count``."""
    sizes = {d: (p ** (d + 1) - 1) // (p - 1) for d in range(-1, n)}
    return min(sizes, key=lambda d: (abs(count - sizes[d]), d))


def _minors(rows: Sequence[Sequence[IntPolynomial]]) -> list[IntPolynomial]:
    a, b = rows
    return [a[i] * b[j] - a[j] * b[i] for i, j in combinations(range(len(a)), 2)]


def singular_ideal_hypersurface(F0: IntPolynomial) -> list[IntPolynomial]:
    return [F0, *gradient(F0)]


def singular_ideal_intersection(F0: IntPolynomial, G0: IntPolynomial) -> list[IntPolynomial]:
    return [F0, G0, *_minors([gradient(F0), gradient(G0)])]


@dataclass
class SingularLocusReport:
    p: int
    n: int
    dims: dict[str, int]
    singular_dims: dict[str, int]
    s_prime: int
    point_counts: dict[str, int]
    count_estimates: dict[str, int]

    def to_json(self) -> dict:
        return dict(self.__dict__)


def singular_dimension(forms: Sequence[IntPolynomial], p: int) -> int:
    """s_p of one form or of the intersection of two forms."""
    if len(forms) == 1:
        return projective_dimension(singular_ideal_hypersurface(forms[0]), p)
    if len(forms) == 2:
        return projective_dimension(singular_ideal_intersection(*forms), p)
    raise ValueError("one or two forms expected")


def sp_prime_bruteforce(F0: IntPolynomial, G0: IntPolynomial | None, p: int, with_counts: bool = True) -> SingularLocusReport:
    """s_p(F0) if G0 is None, otherwise s_p' = max of the three singular dimensions.

    The maximum is only used when V(F0), V(G0) have codimension one and
    V(F0, G0) codimension two; otherwise s_p' = n - 1.  Inputs that are not
    forms are replaced by their leading forms.
    """
    n = F0.n_vars
    if not F0.is_homogeneous():
        F0 = leading_form(F0)
    names: dict[str, list[IntPolynomial]] = {"F0": [F0]}
    if G0 is not None:
        if not G0.is_zero() and not G0.is_homogeneous():
            G0 = leading_form(G0)
        names["G0"] = [G0]
        names["F0,G0"] = [F0, G0]
    dims = {k: projective_dimension(v, p) for k, v in names.items()}
    sing: dict[str, int] = {}
    for k, v in names.items():
        if any(_reduce(f, p).is_zero() for f in v):
            sing[k] = n - 1
        else:
            sing[k] = singular_dimension(v, p)
    if G0 is None:
        s = sing["F0"] if dims["F0"] == n - 2 else n - 1
    elif dims["F0"] == dims["G0"] == n - 2 and dims["F0,G0"] == n - 3:
        s = max(sing.values())
    else:
        s = n - 1
    counts: dict[str, int] = {}
    estimates: dict[str, int] = {}
    if with_counts and p**n <= POINT_GUARD:
        for k, v in names.items():
            ideal = singular_ideal_hypersurface(v[0]) if len(v) == 1 else singular_ideal_intersection(*v)
            c = projective_point_count(ideal, p)
            counts[k] = c
            estimates[k] = dimension_from_count(c, p, n) if c else -1
    return SingularLocusReport(p, n, dims, sing, s, counts, estimates)
