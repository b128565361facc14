"""Exact-rational exponent calculus for the minor arc case analysis.

Every quantity is recorded as the exponent of P, an affine form in the two
parameters (Z, alpha) where R = P^Z and B_1 = P^alpha.  All arithmetic uses
``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Q = Fraction
Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AffineExponentForm:
    """c_Z * Z + c_alpha * alpha + c_0."""

    c_Z: Fraction = Q(0)
    c_alpha: Fraction = Q(0)
    c_0: Fraction = Q(0)

    def __post_init__(self) -> None:
        for name in ("c_Z", "c_alpha", "c_0"):
            v = getattr(self, name)
            if isinstance(v, float):
                raise TypeError("floating point coefficients are not allowed")
            object.__setattr__(self, name, Q(v))

    @classmethod
    def const(cls, c) -> "AffineExponentForm":
        return cls(Q(0), Q(0), Q(c))

    def __add__(self, o: "AffineExponentForm | Fraction | int") -> "AffineExponentForm":
        if not isinstance(o, AffineExponentForm):
            o = AffineExponentForm.const(o)
        return AffineExponentForm(self.c_Z + o.c_Z, self.c_alpha + o.c_alpha, self.c_0 + o.c_0)

    __radd__ = __add__

    def __neg__(self) -> "AffineExponentForm":
        return AffineExponentForm(-self.c_Z, -self.c_alpha, -self.c_0)

    def __sub__(self, o) -> "AffineExponentForm":
        return self + (-o if isinstance(o, AffineExponentForm) else -Q(o))

    def __rsub__(self, o) -> "AffineExponentForm":
        return (-self) + o

    def __mul__(self, k) -> "AffineExponentForm":
        k = Q(k)
        return AffineExponentForm(self.c_Z * k, self.c_alpha * k, self.c_0 * k)

    __rmul__ = __mul__

    def __call__(self, Z, alpha) -> Fraction:
        return self.c_Z * Q(Z) + self.c_alpha * Q(alpha) + self.c_0

    def at(self, p: Point) -> Fraction:
        return self(p[0], p[1])

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c_Z, self.c_alpha, self.c_0)

    def __str__(self) -> str:
        return f"({self.c_Z})Z + ({self.c_alpha})alpha + ({self.c_0})"


ZF = AffineExponentForm(Q(1), Q(0), Q(0))
ALPHA = AffineExponentForm(Q(0), Q(1), Q(0))
B2 = ZF * Q(1, 3) + ALPHA * Q(2, 3)
B3 = ZF * Q(1, 3) + ALPHA * Q(1, 6)
R3 = ZF - ALPHA


@dataclass(frozen=True)
class Polygon:
    """Convex polygon with counterclockwise exact vertices."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple((Q(a), Q(b)) for a, b in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("empty polygon")
        if len(vs) >= 3:
            for i in range(len(vs)):
                a, b, c = vs[i], vs[(i + 1) % len(vs)], vs[(i + 2) % len(vs)]
                if _cross(a, b, c) < 0:
                    raise ValueError("vertices must be convex and counterclockwise")

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains(self, p: Sequence) -> bool:
        p = (Q(p[0]), Q(p[1]))
        if len(self.vertices) < 3:
            return p in self.vertices
        return all(_cross(a, b, p) >= 0 for a, b in self.edges())

    def edge_lines(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Each edge as a line a*Z + b*alpha = c."""
        out = []
        for (x1, y1), (x2, y2) in self.edges():
            a, b = y2 - y1, x1 - x2
            out.append((a, b, a * x1 + b * y1))
        return out


def _cross(a: Point, b: Point, c: Point) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def omega_region() -> Polygon:
    """0 <= alpha <= Z <= 8/5 in the (Z, alpha) plane."""
    return Polygon(((Q(0), Q(0)), (Q(8, 5), Q(0)), (Q(8, 5), Q(8, 5))))


def _intersect(l1, l2) -> Point | None:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def candidate_points(fs: Sequence[AffineExponentForm], region: Polygon) -> list[Point]:
    """Vertices plus all pairwise intersections of edges and equality lines f_i = f_j inside the region."""
    lines = list(region.edge_lines())
    for f, g in combinations(fs, 2):
        d = f - g
        if d.c_Z != 0 or d.c_alpha != 0:
            lines.append((d.c_Z, d.c_alpha, -d.c_0))
    pts = set(region.vertices)
    for l1, l2 in combinations(lines, 2):
        p = _intersect(l1, l2)
        if p is not None and region.contains(p):
            pts.add(p)
    return sorted(pts)


def pointwise_min(fs: Sequence[AffineExponentForm], p: Point) -> Fraction:
    return min(f.at(p) for f in fs)


def maxmin(fs: Sequence[AffineExponentForm], region: Polygon | None = None) -> tuple[Fraction, Point]:
    """Exact maximum over the region of min_i f_i, with a maximising point.

    The pointwise minimum is concave and piecewise affine, so the maximum is
    attained at a vertex of the arrangement formed by the region's edges and
    the equality lines of pairs of forms.
    """
    if not fs:
        raise ValueError("at least one form is required")
    region = region or omega_region()
    best: tuple[Fraction, Point] | None = None
    for p in candidate_points(fs, region):
        v = pointwise_min(fs, p)
        if best is None or v > best[0] or (v == best[0] and p < best[1]):
            best = (v, p)
    if best is None:
        raise ValueError("empty region")
    return best


def sup(f: AffineExponentForm, region: Polygon | None = None) -> tuple[Fraction, Point]:
    return maxmin([f], region)


# ---------------------------------------------------------------------------
# bound families


def _n(n: int) -> Fraction:
    if n < 25:
        raise ValueError("families are defined for n >= 25")
    return Q(n)


def _h1(n: Fraction, m: Fraction) -> AffineExponentForm:
    return (
        Q(4) * m / (3 * (n - 1)) * B3
        + Q(64) * m / (3 * (n - 1) * (n - 17)) * B2
        + ALPHA * Q(1, 4)
        + R3 * (m / 6)
        - ZF * (m / 4)
        + Q(24) * m / (5 * (n - 1))
        - (3 * n - 59) / (n - 17) * Q(4) * m / (3 * (n - 1))
        - Q(1, 10)
    )


def _h3(n: Fraction, m: Fraction) -> AffineExponentForm:
    return (
        Q(4) * m / (3 * (n - 1)) * B3
        - Q(8) * m / (3 * (n + 1) * (n - 1)) * B2
        + ZF * (Q(4) * m / (3 * (n + 1)) - m / 4)
        + ALPHA * Q(1, 4)
        + R3 * (m / 6)
        - Q(4) * m / (3 * (n - 1)) * (3 * n + 4) / (n + 1)
        + Q(24) * m / (5 * (n - 1))
        - Q(1, 10)
    )


def family(name: str, n: int, eta: int | None = None) -> AffineExponentForm:
    """Exponent families h1(eta), h2, h3(eta), w1, w2, w3 as affine forms in (Z, alpha).

    ``eta`` must be 0 or n - 2 for h1 and h3; it is ignored otherwise.
    """
    N = _n(n)
    if name in ("h1", "h3"):
        if eta not in (0, n - 2):
            raise ValueError("eta must be 0 or n-2")
        m = N - eta
        return _h1(N, m) if name == "h1" else _h3(N, m)
    if name == "h2":
        return (
            Q(4) * N / (3 * (N + 1)) * B3
            + R3 * (N / 6)
            + ALPHA * Q(1, 4)
            + ZF * (Q(4) * N / (3 * (N + 1)) - N / 4)
            + Q(4) * N / (5 * (N + 1))
            - Q(1, 10)
        )
    if name == "w1":
        return (1 + Q(16) / (N - 17) * (24 + N) / 24) * B2 + 4 - (3 * N - 59) / (N - 17) * (24 + N) / 24
    if name == "w2":
        return (
            B2
            - (24 + N) / (12 * (N + 1)) * B3
            + ZF * ((N - 1) * (24 + N) / (24 * (N + 1)))
            + 4
            - (15 * N + 21) * (24 + N) / (120 * (N + 1))
        )
    if name == "w3":
        return (
            B2 * (1 - Q(2) / (N + 1) * (24 + N) / 24)
            + ZF * ((N - 1) * (24 + N) / ((N + 1) * 24))
            + 4
            - (3 * N + 4) / (N + 1) * (24 + N) / 24
        )
    raise ValueError(f"unknown family {name!r}")


FAMILY_KEYS = ("h2", "w2", "h1(0)", "h1(n-2)", "w1", "h3(0)", "h3(n-2)", "w3")


def family_by_key(key: str, n: int) -> AffineExponentForm:
    if key.endswith("(0)"):
        return family(key[:-3], n, 0)
    if key.endswith("(n-2)"):
        return family(key[:-5], n, n - 2)
    return family(key, n)


# ---------------------------------------------------------------------------
# the optimisation cases


@dataclass(frozen=True)
class CaseResult:
    name: str
    value: Fraction
    argmax: Point
    threshold: Fraction
    strict: bool

    @property
    def passed(self) -> bool:
        return self.value < self.threshold if self.strict else self.value <= self.threshold

    def to_json(self) -> dict:
        return {
            "case": self.name,
            "value": str(self.value),
            "value_float": float(self.value),
            "argmax": [str(self.argmax[0]), str(self.argmax[1])],
            "threshold": str(self.threshold),
            "relation": "<" if self.strict else "<=",
            "passed": self.passed,
        }


def optimisation_cases(n: int = 30) -> dict[str, CaseResult]:
    """The five max-min verdicts used to close the minor arc argument at a given n."""
    om = omega_region()
    h2, w2 = family("h2", n), family("w2", n)
    h10, h1m, w1 = family("h1", n, 0), family("h1", n, n - 2), family("w1", n)
    h30, h3m, w3 = family("h3", n, 0), family("h3", n, n - 2), family("w3", n)
    out = {}
    v, p = maxmin([h2, w2], om)
    out["range1"] = CaseResult("range1: max min{h2, w2}", v, p, Q(-1, 10), True)
    v, p = maxmin([h10, w1], om)
    out["range2_eta0"] = CaseResult("range2: max min{h1(0), w1}", v, p, Q(-1, 100), False)
    v, p = maxmin([h1m, w1], om)
    out["range2_eta_n-2"] = CaseResult("range2: max min{h1(n-2), w1}", v, p, Q(-1, 50), False)
    v, p = maxmin([h30, w3], om)
    out["range3_eta0"] = CaseResult("range3: max min{h3(0), w3}", v, p, Q(-1, 125), False)
    v, p = sup(h3m, om)
    out["range3_eta_n-2"] = CaseResult("range3: sup h3(n-2)", v, p, Q(-1289, 26970), False)
    return out


def range3_check(n: int = 30) -> Fraction:
    """max over Omega of min{h3(.,0), w3}."""
    return maxmin([family("h3", n, 0), family("w3", n)], omega_region())[0]


# ---------------------------------------------------------------------------
# conditions and parameter choices


def vw1_threshold(n: int) -> Fraction:
    """Exponent a with the condition B_2 <= P^a."""
    N = Q(n)
    return 4 * N / 45 - Q(179, 90)


def vw2_exponents(n: int) -> tuple[Fraction, Fraction]:
    """(e, c) with the condition T >= B_2^e P^{c + 4 phi}."""
    N = Q(n)
    return Q(16) / (N - 17), -(3 * N - 59) / (N - 17)


def vw3_exponents(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """(e_B2, e_R, c) with the condition T >= B_2^e_B2 R^e_R P^c."""
    N = Q(n)
    return -Q(2) / (N + 1), 1 - Q(2) / (N + 1), -3 - 1 / (N + 1)


@dataclass(frozen=True)
class ConditionResult:
    name: str
    satisfied: bool
    margin: Fraction

    def to_json(self) -> dict:
        return {"condition": self.name, "satisfied": self.satisfied, "margin": str(self.margin)}


def condition_check(name: str, params: dict) -> ConditionResult:
    """Exact check of one of the exponent conditions.

    ``params`` holds exponents of P: ``n`` (integer), and as needed ``B2``,
    ``R``, ``T``, ``phi``, ``delta``.  The margin is (right side) - (left side)
    for upper bounds and (left side) - (right side) for lower bounds, so a
    non-negative margin means the condition holds.
    """
    try:
        n = int(params["n"])
        p = {k: Q(str(v)) for k, v in params.items() if k != "n"}
    except (KeyError, ValueError, TypeError) as exc:
        raise ValueError(f"malformed parameters: {exc}") from exc
    phi = p.get("phi", Q(0))
    delta = p.get("delta", Q(0))
    try:
        if name == "vw1":
            margin = vw1_threshold(n) - p["B2"]
        elif name == "vw2":
            e, c = vw2_exponents(n)
            margin = p["T"] - (e * p["B2"] + c + 4 * phi)
        elif name == "vw3":
            eb, er, c = vw3_exponents(n)
            margin = p["T"] - (eb * p["B2"] + er * p["R"] + c)
        elif name == "weyl":
            margin = p["T"] - min(Q(24) / (n - 24) * p["B2"] - 4 + delta, Q(-2))
        else:
            raise ValueError(f"unknown condition {name!r}")
    except KeyError as exc:
        raise ValueError(f"missing parameter {exc}") from exc
    return ConditionResult(name, margin >= 0, margin)


def H_choice(regime: str, n: int, exponents: dict) -> Fraction:
    """Exponent of P for the differencing length H.

    ``averaged-H1`` and ``averaged-H2`` need B3 and T resp. B3 and R;
    ``pointwise`` needs B2, B3 and T (the exponent of the non-constant term
    of 1 + B_2^{4/n}(B_3 T P^4)^{2/n}, floored at 0).
    """
    N = Q(n)
    e = {k: Q(str(v)) for k, v in exponents.items()}
    if regime == "averaged-H1":
        return Q(2) / (N - 1) * (e["B3"] + e["T"]) + Q(36) / (5 * (N - 1))
    if regime == "averaged-H2":
        return Q(2) / (N + 1) * (e["B3"] + e["R"]) + Q(6) / (5 * (N + 1))
    if regime == "pointwise":
        return max(Q(0), Q(4) / N * e["B2"] + Q(2) / N * (e["B3"] + e["T"] + 4))
    raise ValueError(f"invalid regime {regime!r}")


def critical_point(phi: Fraction = Q(0)) -> dict[str, Fraction]:
    """Exponents where B_3 ~ R^{1/2} ~ P^{4/5+phi/2} and T ~ P^{-8/5-phi/2}."""
    return {"B3": Q(4, 5) + phi / 2, "R": Q(8, 5) + phi, "T": -Q(8, 5) - phi / 2}


# ---------------------------------------------------------------------------
# Weyl differencing bounds as exponent functions


def weyl_three_steps_exponent(n: int, q: Fraction, z: Fraction, H: Fraction) -> Fraction:
    """Exponent of P in P^n (P^-2 + q|z|H + qP^-3 + (q|z|P^3)^-1)^{n/8} (epsilon dropped).

    Inputs are exponents of P for q, |z| and H.
    """
    inner = max(Q(-2), q + z + H, q - 3, -(q + z + 3))
    return Q(n) + inner * Q(n, 8)


def vdc_weyl_exponent(n: int, q: Fraction, t: Fraction, H: Fraction) -> Fraction:
    """Exponent for one van der Corput step followed by three Weyl steps, applied to I(q, t)."""
    N = Q(n)
    lead = N - Q(1, 2) + q + max(t, -H - 3) - H * (N - 1) / 2
    bracket = max(
        Q(0),
        H * N / 2 + max(-N / 8, (q + t + H) * N / 16, (q - 3) * N / 16, -(q + t + 3) * N / 16),
    )
    return lead + bracket


def weyl_four_steps_exponent(n: int, q: Fraction, t: Fraction) -> Fraction:
    """Exponent in P^n q t (q t + (q t)^{-1} P^{-4})^{n/24}."""
    N = Q(n)
    return N + q + t + max(q + t, -(q + t) - 4) * N / 24


# ---------------------------------------------------------------------------
# exhaustive scan of the case analysis


def _global_terms(n: int, phi: Fraction) -> dict[str, Fraction]:
    """Cell-independent contributions, as exponents relative to P^{n-4}."""
    N = Q(n)
    y0 = 6 * N / (N + 1) - (N - 1) / 5 + N * phi
    yn2 = Q(12) / (N + 1) - Q(1, 5) + phi
    yn1 = Q(16) / (3 * (N - 1))
    half = Q(1, 2)
    return {
        "Y'_0": -Q(1, 10) + half * y0,
        "Y'_{n-2}": -Q(1, 10) + half * yn2,
        "Y''_{n-1}": -Q(1, 10) + half * yn1,
    }


def _range4_terms(n: int, phi: Fraction) -> dict[str, Fraction]:
    N = Q(n)
    thr = vw1_threshold(n)
    k0 = Q(1, 5) + Q(7, 2) + (N + 3) / 30 + thr * (-N / 4) + 2 * phi
    k1 = Q(16) / (3 * (N - 1)) - Q(1, 10) + (Q(4) / (3 * (N - 1)) - Q(1, 4)) * thr
    return {"K''_0": k0, "K''_{n-2,1}": k1}


def _small_t_terms(n: int, Zv: Fraction, av: Fraction, phi: Fraction, delta: Fraction) -> dict[str, Fraction]:
    """Pointwise differencing bounds in the range below the Weyl threshold, evaluated at a cell."""
    N = Q(n)
    b1, r3 = av, Zv - av
    b2 = r3 / 3 + b1
    b3 = r3 / 3 + b1 / 2
    out = {
        "K'_0": -(N - 29) / 10 + (N + 2) * phi / 4,
        "K'_{n-2}": -Q(1, 2) + Q(4) / N,
    }
    e_n1 = Q(8) * (N - 12) / (3 * N * (N - 24)) + Q(4) / (3 * N) - Q(7, 4)
    out["K''_{n-1}"] = 4 * delta / (3 * N) + e_n1 * b2
    e_b = Q(8) * (N - 12) / (3 * (N - 24)) - Q(13, 12) - N / 4
    e_r = Q(8) * (N - 12) / (9 * (N - 24)) - N / 12 - Q(2, 9)
    out["K''_0"] = 4 * delta / 3 + e_b * b1 + e_r * r3
    c = Q(8) / (3 * N)
    out["K''_{n-2}"] = (
        -2 * b2 + b1 / 4 + r3 / 3 - (b1 + r3) / 2 + c * (b3 + Q(2) * (N - 12) / (N - 24) * b2 + delta)
    )
    return out


@dataclass
class CellReport:
    Z: Fraction
    alpha: Fraction
    margin: Fraction
    worst: str
    cases: dict[str, Fraction] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "Z": str(self.Z),
            "alpha": str(self.alpha),
            "margin": str(self.margin),
            "worst": self.worst,
            "cases": {k: str(v) for k, v in self.cases.items()},
        }


@dataclass
class ScanReport:
    n: int
    denominator: int
    phi: Fraction
    delta: Fraction
    Delta: Fraction
    cells: list[CellReport]

    @property
    def max_margin(self) -> Fraction:
        return max(c.margin for c in self.cells)

    @property
    def all_negative(self) -> bool:
        return all(c.margin < 0 for c in self.cells)

    def nonnegative_cells(self) -> list[CellReport]:
        return [c for c in self.cells if c.margin >= 0]

    def to_json(self, include_cells: bool = False) -> dict:
        worst = max(self.cells, key=lambda c: (c.margin, c.Z, c.alpha))
        d = {
            "n": self.n,
            "denominator": self.denominator,
            "phi": str(self.phi),
            "delta": str(self.delta),
            "Delta": str(self.Delta),
            "n_cells": len(self.cells),
            "max_margin": str(self.max_margin),
            "max_margin_float": float(self.max_margin),
            "all_negative": self.all_negative,
            "nonnegative_cells": len(self.nonnegative_cells()),
            "worst_cell": worst.to_json(),
        }
        if include_cells:
            d["cells"] = [c.to_json() for c in self.cells]
        return d


def scan_cell(
    n: int,
    Zv: Fraction,
    av: Fraction,
    phi: Fraction = Q(0),
    delta: Fraction = Q(0),
    Delta: Fraction = Q(1, 10),
) -> CellReport:
    """Worst admissible exponent over every T-range feasible at the cell (Z, alpha).

    For each range the bound is the best (smallest) of the families available
    there, and the cell margin is the largest such value; negative means the
    case analysis closes at this cell.
    """
    N = Q(n)
    Zv, av = Q(Zv), Q(av)
    b2 = B2(Zv, av)
    b3 = B3(Zv, av)
    t_max = -Q(8, 5) - phi / 2
    t_weyl = min(Q(24) / (N - 24) * b2 - 4 + delta, Q(-2))
    u1 = -Q(2) / (N + 1) * b3 + (1 - Q(2) / (N + 1)) * Zv - Q(6) / (5 * (N + 1)) - 3
    e2, c2 = vw2_exponents(n)
    u2 = e2 * b2 + c2 + 4 * phi
    eb, er, c3 = vw3_exponents(n)
    u3 = eb * b2 + er * Zv + c3
    cases: dict[str, Fraction] = {}
    p = (Zv, av)

    if t_weyl <= min(u1, t_max):
        eta0 = min(family("h2", n).at(p), family("w2", n).at(p))
        etam = (Q(4) / (N + 1) - Q(1, 6)) * Zv + Q(8) / (5 * (N + 1)) - Q(1, 10)
        cases["range1"] = max(eta0, etam)
    lower = max(u1, t_weyl)
    if lower < min(u2, t_max):
        w1 = family("w1", n).at(p)
        cases["range2"] = max(min(family("h1", n, 0).at(p), w1), min(family("h1", n, n - 2).at(p), w1))
    if lower < min(u3, t_max):
        w3 = family("w3", n).at(p)
        cases["range3"] = max(min(family("h3", n, 0).at(p), w3), family("h3", n, n - 2).at(p))
    if b2 >= vw1_threshold(n) and lower < t_max:
        r4 = _range4_terms(n, phi)
        k2 = (Q(4) / (N + 1) - Q(1, 6)) * Zv + Q(8) / (5 * (N + 1)) - Q(1, 10)
        cases["range4"] = max(r4["K''_0"], r4["K''_{n-2,1}"], k2)
    # small T: below the Weyl threshold, but above R P^{-4+Delta} unless R >= P^Delta
    t_floor = Zv - 4 + Delta
    if Zv >= Delta or t_floor < t_weyl:
        st = _small_t_terms(n, Zv, av, phi, delta)
        cases["small-T"] = max(st.values())
    for k, v in _global_terms(n, phi).items():
        cases[k] = v
    worst = max(cases, key=lambda k: cases[k])
    return CellReport(Zv, av, cases[worst], worst, cases)


def omega_grid(denominator: int) -> Iterable[Point]:
    top = Q(8, 5)
    steps = int(top * denominator)
    for i in range(steps + 1):
        Zv = Q(i, denominator)
        for j in range(i + 1):
            yield Zv, Q(j, denominator)
    if top * denominator != steps:
        for j in range(steps + 1):
            yield top, Q(j, denominator)
        yield top, top


def minor_arc_scan(
    n: int,
    grid_denominator: int = 32,
    phi: Fraction = Q(0),
    delta: Fraction = Q(0),
    Delta: Fraction = Q(1, 10),
    cells: Sequence[Point] | None = None,
) -> ScanReport:
    if not 29 <= n <= 40:
        raise ValueError("scan supports 29 <= n <= 40")
    pts = list(cells) if cells is not None else list(omega_grid(grid_denominator))
    reports = [scan_cell(n, Zv, av, Q(phi), Q(delta), Q(Delta)) for Zv, av in pts]
    return ScanReport(n, grid_denominator, Q(phi), Q(delta), Q(Delta), reports)
