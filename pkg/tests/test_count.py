from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quartic_delta import count
from quartic_delta.errors import GuardError
from quartic_delta.poly import IntPolynomial, parse_polynomial
from quartic_delta.weights import WeightSpec


def projective_brute(coeffs, P):
    import math
    from itertools import product

    hits = 0
    for x in product(range(-P, P + 1), repeat=len(coeffs)):
        if any(x) and math.gcd(*x) == 1 and sum(c * t**4 for c, t in zip(coeffs, x)) == 0:
            hits += 1
    return hits // 2


@pytest.mark.parametrize("P,expected", [(1, 16), (3, 112), (10, 1008)])
def test_split_quartic_counts(P, expected):
    F = IntPolynomial.diagonal([1, 1, -1, -1])
    assert count.count_projective(F, P, "direct").count == expected


def test_binary_form_has_two_points():
    assert count.count_projective(parse_polynomial("x1**4 - x2**4", 2), 7).count == 2


@given(st.lists(st.sampled_from([-3, -2, -1, 1, 2, 3]), min_size=3, max_size=4), st.integers(1, 4))
def test_meet_in_middle_equals_enumeration(coeffs, P):
    F = IntPolynomial.diagonal(coeffs)
    mitm = count.count_projective(F, P, "meet-in-middle").count
    assert mitm == count.count_projective(F, P, "direct").count == projective_brute(coeffs, P)


def test_smoothed_counts_agree_across_methods(fermat6, centred_weight):
    W = centred_weight(6)
    a = count.count_smoothed(fermat6, W, 12, "direct")
    b = count.count_smoothed(fermat6, W, 12, "meet-in-middle")
    assert a == pytest.approx(b, rel=1e-12)


def test_growth_fit_needs_four_points(fermat6):
    with pytest.raises(ValueError):
        count.growth_fit(fermat6, [3, 4, 5])


def test_growth_fit_exact_for_power_law():
    # x1 - x2 in P^1: 1 primitive point [1:1] at every P, slope 0
    fit = count.growth_fit(parse_polynomial("x1**4 - x2**4", 2), [2, 3, 4, 5])
    assert fit.slope == pytest.approx(0.0, abs=1e-12)


def test_direct_enumeration_guard():
    F = parse_polynomial(" + ".join(f"x{i}**3*x{i % 12 + 1}" for i in range(1, 13)), 12)
    with pytest.raises(GuardError):
        count.count_projective(F, 10)


def test_positive_definite_has_no_points():
    assert count.count_projective(IntPolynomial.diagonal([1, 2, 3]), 6).count == 0


def test_smoothed_count_single_zero():
    F = parse_polynomial("x1**4 - 81", 1)
    W = WeightSpec((Fraction(1, 2),))
    from quartic_delta.weights import eval_weight
    import numpy as np

    assert count.count_smoothed(F, W, 8) == pytest.approx(float(eval_weight(W, np.array([[3 / 8]]))[0]))
    assert count.count_smoothed(F, WeightSpec((Fraction(-1, 2),)), 20) == 0


def test_smoothed_count_matches_delta_route(fermat6, centred_weight):
    from quartic_delta.delta import count_via_delta

    rep = count_via_delta(fermat6, centred_weight(6), 8)
    assert rep.via_delta == pytest.approx(rep.direct, rel=0.02)
    assert count.count_smoothed(fermat6, centred_weight(6), 8) == pytest.approx(rep.direct, rel=1e-12)


def test_degenerate_split_rejected():
    with pytest.raises(ValueError):
        count.meet_in_middle_diagonal([1, 1, -1, -1], 3, split=0)


@given(st.lists(st.sampled_from([-2, -1, 1, 2]), min_size=3, max_size=4), st.integers(1, 5))
def test_counts_monotone_in_P(coeffs, P):
    F = IntPolynomial.diagonal(coeffs)
    assert count.count_projective(F, P).count <= count.count_projective(F, P + 1).count


def test_growth_fit_rejects_zero_counts():
    with pytest.raises(ValueError):
        count.growth_fit(IntPolynomial.diagonal([1, 1, 1]), [2, 3, 4, 5])
