import cmath
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from quartic_delta import local
from quartic_delta.errors import GuardError
from quartic_delta.poly import IntPolynomial, parse_polynomial
from quartic_delta.weights import WeightSpec


def series_term_naive(F: IntPolynomial, q: int) -> complex:
    tot = 0j
    for a in range(1, q + 1):
        if math.gcd(a, q) != 1:
            continue
        for x in product(range(q), repeat=F.n_vars):
            tot += cmath.exp(2j * math.pi * a * F(x) / q)
    return tot / q**F.n_vars


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 8, 9])
def test_series_term_matches_definition(q):
    F = parse_polynomial("x1**4 + 2*x2**4 - 3*x3**4 + x1*x2*x3**2", 3)
    assert abs(float(local.series_term_generic(F, q)) - series_term_naive(F, q)) <= 1e-10


@given(st.integers(1, 12), st.integers(1, 12))
def test_series_term_is_multiplicative(r, s):
    if math.gcd(r, s) != 1:
        return
    F = IntPolynomial.diagonal([1, 3, -2])
    A = local.series_term_generic
    assert A(F, r * s) == A(F, r) * A(F, s)


def test_diagonal_route_matches_generic():
    F = IntPolynomial.diagonal([1, 2, -3])
    a = local.singular_series(F, 80, "generic").value
    b = local.singular_series(F, 80, "diagonal-fast").value
    assert a == pytest.approx(b, rel=1e-12)


def test_partial_sums_converge_for_many_variables():
    F = IntPolynomial.diagonal([1] * 15 + [-1] * 15)
    rep = local.convergence_probe(F, [25, 50, 100, 200])
    assert rep.psi_hat > 0
    assert rep.values[-1] == pytest.approx(rep.values[-2], rel=1e-6)


def test_generic_series_guard(fermat6):
    with pytest.raises(GuardError):
        local.singular_series(fermat6, 60, "generic")


def test_convergence_probe_needs_three_rungs(fermat6):
    with pytest.raises(ValueError):
        local.convergence_probe(fermat6, [25, 50])


def test_singular_integral_product_route_matches_fubini():
    F = IntPolynomial.diagonal([1, 1, -2])
    W = WeightSpec((Fraction(1, 2),) * 3)
    a = local.singular_integral(F, W, 20).value
    b = local.singular_integral_fubini(F, W, 20)
    assert a == pytest.approx(b, rel=1e-8)


def test_singular_integral_stable_in_truncation(fermat6, centred_weight):
    W = centred_weight(6)
    v = [local.singular_integral(fermat6, W, R).value for R in (10, 25, 50)]
    assert v[1] == pytest.approx(v[0], rel=1e-4)
    assert v[2] == pytest.approx(v[1], rel=1e-4)
    assert local.singular_integral(fermat6, W, 0).value == 0


def test_modulus_shape_count_small_ranges():
    rep = local.modulus_shape_count([10])
    # a single range is the "full" one with exponents >= 1: every b in (10, 20]
    assert rep.counts == [10]
    rep = local.modulus_shape_count([10, 10])
    # squarefree b in (10, 20]: 11 13 14 15 17 19; square-full: 16
    assert rep.counts == [6, 1]


def test_main_term_scaling():
    assert local.main_term(2.0, 3.0, 10, 6) == pytest.approx(600.0)


def test_series_examples():
    F = IntPolynomial.diagonal([1, 1, -2])
    assert local.singular_series(F, 1).value == 1
    a = local.singular_series(F, 20, "generic").value
    b = local.singular_series(F, 20, "diagonal-fast").value
    assert a == pytest.approx(b, rel=1e-10)
    with pytest.raises(ValueError):
        local.singular_series(parse_polynomial("x1**4 + x1*x2**3", 2), 10, "diagonal-fast")


@given(st.integers(1, 20), st.integers(1, 20))
def test_binary_series_term_multiplicative(r, s):
    if math.gcd(r, s) != 1:
        return
    F = parse_polynomial("x1**4 + 3*x1*x2**3 - 2*x2**4", 2)
    A = local.series_term_generic
    assert A(F, r * s) == A(F, r) * A(F, s)


def test_rates_for_five_and_thirty_variables():
    assert local.convergence_probe(IntPolynomial.diagonal([1, 1, 1, -1, -2]), [25, 50, 100, 200]).psi_hat > 0
    F30 = IntPolynomial.diagonal([1] * 15 + [-1] * 15)
    assert local.convergence_probe(F30, [25, 50, 100, 200]).psi_hat >= 1


def test_singular_integral_vanishes_without_real_zeros():
    F = IntPolynomial.diagonal([1, 1, 1])
    W = WeightSpec((Fraction(1, 2),) * 3)
    assert abs(local.singular_integral(F, W, 50).value) <= 1e-3


def test_D_weight_examples():
    assert local.D_weight(7, {7: -1}) == 1
    assert local.D_weight(7, {7: 0}) == pytest.approx(7**0.5)
    assert local.D_weight(49, {7: 1}) == 49
    with pytest.raises((KeyError, ValueError)):
        local.D_weight(15, {3: 0})


def test_modulus_shape_count_cube_full():
    rep = local.modulus_shape_count([10, 10, 1000])
    # cube-full b in (1000, 2000]: 1024 1296 1331 1728 1944 2000
    assert rep.counts[2] == 6
    tiny = local.modulus_shape_count([0.5, 0.3])
    assert tiny.total in (0, 1)


def test_main_term_at_P_one():
    assert local.main_term(2.5, 0.4, 1, 6) == pytest.approx(1.0)
