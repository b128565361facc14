from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quartic_delta.delta import (
    BumpChoice,
    DeltaKernel,
    bump,
    count_via_delta,
    delta_identity_check,
    h_eval,
    verify_delta,
)
from quartic_delta.poly import IntPolynomial, parse_polynomial
from quartic_delta.weights import WeightSpec

B = BumpChoice()


def test_w0_is_a_probability_density_on_half_one():
    t = np.array([0.4, 0.5, 1.0, 1.1])
    assert np.all(B.w0(t) == 0)
    mass = mpmath.quad(lambda s: float(B.w0(np.array([float(s)]))[0]), [0.5, 0.75, 1])
    assert float(mass) == pytest.approx(1.0, abs=1e-10)


def test_U_normalisation():
    assert float(B.U(np.array([0.0]))[0]) == pytest.approx(1.0)
    mass = mpmath.quad(lambda s: float(B.U(np.array([float(s)]))[0]), [-0.5, 0, 0.5])
    assert float(mass) == pytest.approx(1.0, abs=1e-10)
    assert np.all(B.U(np.array([-0.5, 0.5, 0.7])) == 0)


@given(st.floats(-0.999, 0.999), st.floats(0.5, 10), st.floats(0.1, 2))
def test_bump_bounded_and_even(x, beta, alpha):
    v = bump(np.array([x, -x]), beta, alpha)
    assert 0 <= v[0] <= 1
    assert v[0] == v[1]


@pytest.mark.parametrize("Q", [5, 10, 20])
def test_untruncated_identity_is_exact(Q):
    assert delta_identity_check(Q) <= 1e-12


@pytest.mark.parametrize("Q", [5, 10])
def test_two_routes_agree(Q):
    k = DeltaKernel(Q)
    n = np.arange(-Q * Q, Q * Q + 1)
    assert np.max(np.abs(k.delta_approx(n, "tabulated") - k.delta_approx(n, "fubini"))) <= 1e-12


KERNEL_8 = DeltaKernel(8)


@settings(max_examples=15)
@given(st.integers(1, 400))
def test_delta_approx_is_even(n):
    a, b = KERNEL_8.delta_approx([n, -n])
    assert a == pytest.approx(b, abs=1e-13)


def test_truncation_error_shrinks_with_Q():
    e5 = verify_delta(5).max_error
    e20 = verify_delta(20).max_error
    assert e5 <= 1e-2
    assert e20 <= e5 / 2


def test_error_keeps_falling_to_Q40():
    errs = [verify_delta(Q).max_error for Q in (5, 10, 20, 40)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("n,tol", [(0, 1e-2), (7, 1e-2), (64, 2e-2)])
def test_delta_at_half_theta(n, tol):
    val = DeltaKernel(10, theta=0.5).delta_approx([n])[0]
    assert abs(val - (n == 0)) <= tol


def test_kernel_support():
    assert h_eval(1.5, np.array([0.1]))[0] == 0
    assert h_eval(0.3, np.array([0.2]))[0] != 0
    with pytest.raises(ValueError):
        h_eval(0.0, np.array([0.1]))


def test_count_via_delta_without_zeros():
    rep = count_via_delta(parse_polynomial("x1**4 + 1", 1), WeightSpec((Fraction(1, 2),)), 8)
    assert rep.direct == 0
    assert rep.abs_error <= 1e-4


def test_exact_normalising_constant_is_needed_at_small_Q():
    assert verify_delta(5, cq_mode="one").max_error > verify_delta(5).max_error


@pytest.mark.parametrize("Q", [40, 80])
def test_arc_weights_flat_for_small_moduli(Q):
    k = DeltaKernel(Q)
    z = np.linspace(-1 / Q**2, 1 / Q**2, 41)
    for q in range(1, int(Q**0.25) + 1):
        assert np.max(np.abs(k.p_q(q, z) - 1)) <= 0.05


def test_arc_weights_flat_up_to_root_Q_at_larger_Q():
    Q = 160
    k = DeltaKernel(Q)
    z = np.linspace(-1 / Q**2, 1 / Q**2, 21)
    for q in range(1, int(Q**0.5) + 1):
        assert np.max(np.abs(k.p_q(q, z) - 1)) <= 0.05


def test_arc_weight_integral_is_bounded():
    k = DeltaKernel(20)
    _, dy = k.y_grid
    for q in range(1, 21):
        bound = np.sum(np.abs(k.hU(q))) * dy
        assert np.max(np.abs(k.p_q(q, np.linspace(-0.01, 0.01, 51)))) <= bound + 1e-12


def test_count_via_delta_linear_form():
    F = parse_polynomial("x1 - x2", 2)
    W = WeightSpec((Fraction(1, 2), Fraction(1, 2)))
    rep = count_via_delta(F, W, 8)
    assert rep.rel_error <= 1e-4


def test_count_via_delta_diagonal_quartic():
    F = IntPolynomial.diagonal([1, 1, -2])
    W = WeightSpec((Fraction(1, 2),) * 3)
    rep = count_via_delta(F, W, 8)
    assert rep.rel_error <= 1e-4


def test_kernel_rejects_bad_parameters():
    with pytest.raises(ValueError):
        DeltaKernel(0)
    with pytest.raises(ValueError):
        DeltaKernel(5, theta=1.0)
    with pytest.raises(ValueError):
        DeltaKernel(5).p_q(6, 0.0)
