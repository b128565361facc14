import cmath
import math
import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quartic_delta.errors import GuardError
from quartic_delta.expsums import checks, complete, geometry
from quartic_delta.expsums.archimedean import (
    S_qz,
    S_qz_direct,
    poisson_check,
    vdc_inequality_check,
)
from quartic_delta.poly import IntPolynomial, difference, parse_polynomial
from quartic_delta.weights import WeightSpec


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def units(q):
    return [s for s in range(1, q + 1) if math.gcd(s, q) == 1]


def S_naive(q, f, g, a, v):
    fac = complete.factorize_modulus(q)
    b1, q2 = fac.b1, fac.q2
    tot = 0j
    for x in product(range(q), repeat=f.n_vars):
        fx, gx = f(x), g(x)
        inner = sum(e((s1 * gx + (s1 - s2) * fx) / b1) for s1 in units(b1) for s2 in units(b1))
        tot += inner * e(a * gx / q2) * e(sum(vi * xi for vi, xi in zip(v, x)) / q)
    return tot


small_poly = st.builds(
    lambda cs: IntPolynomial.from_dict(2, {(4, 0): cs[0], (0, 3): cs[1], (1, 1): cs[2], (1, 0): cs[3]}),
    st.tuples(*[st.integers(-5, 5)] * 4),
)


@given(small_poly, small_poly, st.integers(2, 12), st.tuples(st.integers(0, 11), st.integers(0, 11)))
def test_T_complete_matches_triple_loop(f, g, q, v):
    assert abs(complete.T_complete(q, f, g, v) - complete.T_complete_direct(q, f, g, v)) <= 1e-8 * q**4


@given(small_poly, small_poly, st.sampled_from([4, 8, 9, 12, 18]), st.data())
def test_S_complete_matches_definition(f, g, q, data):
    fac = complete.factorize_modulus(q)
    a = data.draw(st.sampled_from(units(fac.q2)))
    v = data.draw(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)))
    assert abs(complete.S_complete(q, f, g, a, v) - S_naive(q, f, g, a, v)) <= 1e-8 * q**4


@given(st.integers(1, 10**6))
def test_modulus_factorisation_parts(q):
    fac = complete.factorize_modulus(q)
    assert fac.b1 * fac.b2 * fac.q3 == q
    assert fac.c**2 * fac.d == fac.q3
    assert math.gcd(fac.b1, fac.q2) == 1


def test_all_v_transform_agrees_with_pointwise():
    f = parse_polynomial("x1**4 + 2*x2**4", 2)
    g = difference(f, (1, 2))
    q = 15
    allT = complete.T_complete_all(q, f, g)
    for v in [(0, 0), (1, 2), (7, 11)]:
        assert abs(allT[v] - complete.T_complete(q, f, g, v)) <= 1e-8


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_multiplicativity_small_suite(seed):
    rep = checks.multiplicativity_suite(12, seed, 1e-9, max_q=500)
    assert rep.passed, rep.to_json()


def test_Z_table_closed_form():
    out = checks.z_table_check(50)
    assert out["passed"]
    for p in (2, 3, 47):
        assert complete.Z_eval(p, 0, 0) == (p - 1) ** 2
        assert complete.Z_eval(p, 0, 1) == 1 - p
        assert complete.Z_eval(p, 1, 1) == 1


@given(st.sampled_from([6, 10, 15, 30]), st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_M_d_rank_count_matches_enumeration(d, s):
    g = parse_polynomial("x1**3 + x1*x2**2 + 2*x2**3", 2)
    assert complete.M_d(g, d, s) == complete.M_d_bruteforce(g, d, s)


def test_guard_rejects_large_enumeration():
    f = IntPolynomial.diagonal([1] * 6)
    with pytest.raises(GuardError):
        complete.T_complete(50, f, f, [0] * 6)


# finite field geometry


def test_fermat_quartic_singular_locus():
    F = parse_polynomial("x1**4 + x2**4 + x3**4", 3)
    assert geometry.sp_prime_bruteforce(F, None, 2).s_prime == 1
    for p in (3, 5, 7):
        assert geometry.sp_prime_bruteforce(F, None, p).s_prime == -1


def test_point_count_of_conic():
    # x1^2 + x2^2 - x3^2 is a smooth conic: p + 1 points over F_p
    C = parse_polynomial("x1**2 + x2**2 - x3**2", 3)
    for p in (3, 5, 7, 11):
        assert geometry.projective_point_count([C], p) == p + 1
        assert geometry.projective_dimension([C], p) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13, 101])
def test_weil_bound_for_cubic(p):
    assert checks.weil_cubic_check(p) <= 1.0


def test_prime_bound_small_suite():
    reps = checks.prime_bound_suite(seed=3, per_prime=1, max_p=11, max_n=2)
    assert reps
    assert max(r.max_ratio for r in reps if r.skipped is None) <= 8


# archimedean side


def test_ramanujan_collapse_of_S_qz():
    F = parse_polynomial("x1**4 - 2*x2**4", 2)
    W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
    for q, z in [(3, 0.0), (5, 1e-5), (6, -2e-6)]:
        a, b = S_qz(F, W, 12, q, z), S_qz_direct(F, W, 12, q, z)
        assert abs(a - b) <= 1e-9 * max(1.0, abs(b))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_poisson_summation_for_differenced_sum(q):
    F = IntPolynomial.diagonal([1, -2])
    W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
    h = (1, 2)
    rep = poisson_check(F, difference(F, h), W.differenced(h, 20), 20, q, 1, 3e-6)
    assert rep.rel_error <= 1e-6


def test_van_der_corput_inequality_holds():
    F = IntPolynomial.diagonal([1, -2])
    W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
    for H in (1, 2, 20):
        rep = vdc_inequality_check(F, W, 20, 6, 1e-5, H)
        assert rep.lhs <= rep.rhs


# documented small examples

from quartic_delta.arith import crt_pair
from quartic_delta.expsums.archimedean import S_alpha, S_at, oscillatory_I, vdc_sum, vdc_trivial_bound
from quartic_delta.weights import eval_weight, weight_mass


@pytest.mark.parametrize(
    "q,parts",
    [(360, (5, 9, 8, 2, 2)), (1, (1, 1, 1, 1, 1)), (12, (3, 4, 1, 1, 1))],
)
def test_factorize_examples(q, parts):
    fac = complete.factorize_modulus(q)
    assert (fac.b1, fac.b2, fac.q3, fac.c, fac.d) == parts


def S_alpha_naive(coeff, W, P, alpha):
    tot = 0j
    for x in range(-P, P + 1):
        w = float(eval_weight(W, np.array([[x / P]]))[0])
        tot += w * e(float(alpha) * coeff * x**4)
    return tot


def test_generating_sum_examples():
    F = parse_polynomial("x1**4", 1)
    W = WeightSpec((Fraction(0),), Fraction(1))
    assert S_alpha(F, W, 5, Fraction(1, 3)) == pytest.approx(S_alpha_naive(1, W, 5, Fraction(1, 3)), abs=1e-10)
    s0 = S_alpha(F, W, 5, 0)
    assert s0.imag == 0 and s0.real > 0
    a, b = S_alpha(F, W, 5, 0.123), S_alpha(F, W, 5, -0.123)
    assert abs(a - b.conjugate()) <= 1e-12
    assert S_qz(F, W, 5, 1, 0.01) == pytest.approx(S_alpha(F, W, 5, 0.01))
    assert S_qz(F, W, 5, 2, 0.01) == pytest.approx(S_at(F, W, 5, 1, 2, 0.01))
    assert S_qz(F, W, 5, 6, 0.0) == pytest.approx(S_at(F, W, 5, 1, 6, 0) + S_at(F, W, 5, 5, 6, 0))


def test_complete_sum_examples():
    f = parse_polynomial("x1**4", 1)
    g3 = parse_polynomial("x1**3", 1)
    zero = IntPolynomial.zero(1)
    assert complete.T_complete(1, f, g3, [0]) == 1
    assert complete.S_complete(1, f, g3, 1, [0]) == 1
    assert abs(complete.T_star(2, 1, g3, [0])) <= 1e-12
    assert complete.T_star(7, 1, zero, [0]) == pytest.approx(7)
    assert abs(complete.T_star(7, 1, zero, [3])) <= 1e-12
    for p in (5, 7, 11, 13):
        assert abs(complete.T_complete(p, f, zero, [0]) - complete.T_complete_direct(p, f, zero, [0])) <= 1e-9


def test_Z_examples():
    assert complete.Z_eval(5, 1, 2) == 1
    assert complete.Z_eval(5, 0, 1) == -4
    assert complete.Z_eval(5, 0, 0) == 16
    assert checks.z_gcd_envelope(200)


def test_crt_examples():
    rb, sb = crt_pair(3, 5)
    assert (rb, sb) == (2, -1)
    assert crt_pair(1, 12) == (1, 0)


def test_multiplicativity_examples():
    rng = random.Random(5)
    f, g = parse_polynomial("x1**4", 1), parse_polynomial("x1**3", 1)
    # q = 60 has b1 = 15 and square-full part 4
    for _ in range(20):
        v = [rng.randrange(60)]
        assert complete.S_complete(60, f, g, 1, v) == pytest.approx(complete.S_product_side(60, f, g, 1, v), abs=1e-8)
    for _ in range(10):
        v = [rng.randrange(36)]
        lhs = complete.T_star(36, 5, g, v)
        assert lhs == pytest.approx(complete.T_star_product_side(4, 9, 5, g, v), abs=1e-8)


def test_differenced_sum_examples():
    F = IntPolynomial.diagonal([1, -2])
    W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
    from quartic_delta.expsums.archimedean import lattice

    lat = lattice(W, 10)
    assert vdc_sum(F, W, 10, 1, 0.0, 1, (0, 0)) == pytest.approx(np.sum(lat.weights**2))
    for q, h in [(6, (1, 0)), (12, (2, 1))]:
        assert abs(vdc_sum(F, W, 10, q, 1e-4, 1, h)) <= vdc_trivial_bound(F, W, 10, q, h) + 1e-9


def test_oscillatory_integral_at_origin():
    W = WeightSpec((Fraction(1, 2), Fraction(-1, 3)))
    g = parse_polynomial("x1**3 + x2", 2)
    val = oscillatory_I(W, g, 10, 0.0, [0.0, 0.0])
    assert val.real == pytest.approx(100 * weight_mass(W), rel=1e-6)
    a = oscillatory_I(W, g, 10, 1e-3, [0.3, -0.2])
    b = oscillatory_I(W, g, 10, -1e-3, [-0.3, 0.2])
    assert abs(a - b.conjugate()) <= 1e-8


def test_M_d_examples():
    g = parse_polynomial("x1**3", 1)
    assert complete.M_d(g, 5, [0]) == 5
    assert complete.M_d(g, 5, [1]) == 1


def test_parseval_identity():
    f, g = parse_polynomial("x1**4", 1), parse_polynomial("x1**3 + 2*x1", 1)
    for q in (5, 12, 18, 20):
        lhs, rhs = checks.parseval_check(q, f, g, 1)
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_divisor_count_examples():
    f = IntPolynomial.diagonal([1, 1, 1])
    W = WeightSpec((Fraction(1, 2),) * 3)
    one = checks.divisor_count_check(f, W, 20, 1)
    assert one.ratio == pytest.approx(weight_mass(W), rel=0.05)
    assert checks.divisor_count_check(f, W, 20, 4).skipped is not None


def test_empty_variety_has_dimension_minus_one():
    x1, x2 = parse_polynomial("x1", 2), parse_polynomial("x2", 2)
    assert geometry.projective_dimension([x1, x2], 3) == -1
    # dimension is geometric: x1^2 + x2^2 has no F_3 points but two over the closure
    F = parse_polynomial("x1**2 + x2**2", 2)
    assert geometry.projective_point_count([F], 3) == 0
    assert geometry.projective_dimension([F], 3) == 0


def test_univariate_prime_bound():
    f, g = parse_polynomial("x1**4 + 2*x1", 1), parse_polynomial("x1**3 + 1", 1)
    for p in (5, 7, 11, 13, 101):
        rep = checks.prime_bound_check_univariate(f, g, p)
        assert rep.max_ratio <= 4
