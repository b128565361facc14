from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from quartic_delta import bounds
from quartic_delta.bounds import AffineExponentForm as A

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=50)
forms = st.builds(A, rationals, rationals, rationals)
omega_points = st.tuples(
    st.fractions(0, Q(8, 5), max_denominator=40), st.fractions(0, 1, max_denominator=40)
).map(lambda t: (t[0], t[0] * t[1]))


def test_omega_region():
    om = bounds.omega_region()
    assert set(om.vertices) == {(Q(0), Q(0)), (Q(8, 5), Q(0)), (Q(8, 5), Q(8, 5))}
    assert om.contains((Q(1), Q(1, 2)))
    assert not om.contains((Q(1), Q(2)))


def test_maxmin_of_opposite_forms():
    v, p = bounds.maxmin([A(Q(1), Q(0), Q(0)), A(Q(-1), Q(0), Q(0))])
    assert v == 0
    assert p[0] == 0


@given(st.lists(forms, min_size=1, max_size=4), omega_points)
def test_maxmin_dominates_every_point(fs, p):
    v, arg = bounds.maxmin(fs)
    assert bounds.pointwise_min(fs, p) <= v
    assert bounds.pointwise_min(fs, arg) == v
    assert bounds.omega_region().contains(arg)


@given(forms, forms, omega_points)
def test_affine_arithmetic(f, g, p):
    assert (f + g).at(p) == f.at(p) + g.at(p)
    assert (f - g).at(p) == f.at(p) - g.at(p)
    assert (f * 3).at(p) == 3 * f.at(p)


# coefficient tuples displayed for n = 30
GOLDEN = {
    ("h2", None): (Q(-145, 186), Q(-1687, 372), Q(209, 310)),
    ("w2", None): (Q(889, 372), Q(239, 372), Q(-1759, 620)),
    ("h1", 0): (Q(-115, 78), Q(-15329, 4524), Q(5943, 3770)),
    ("w1", None): (Q(49, 39), Q(98, 39), Q(-71, 52)),
    ("h3", 0): (Q(-145, 186), Q(-49403, 10788), Q(6141, 8990)),
    ("w3", None): (Q(889, 372), Q(53, 93), Q(-175, 62)),
}


@pytest.mark.parametrize("key", list(GOLDEN))
def test_family_coefficients_at_thirty(key):
    name, eta = key
    assert bounds.family(name, 30, eta).as_tuple() == GOLDEN[key]


def test_family_rejects_unknown_names():
    with pytest.raises(ValueError):
        bounds.family("h4", 30)
    with pytest.raises(ValueError):
        bounds.family("h1", 30, 5)


def test_optimisation_verdicts_at_thirty():
    cases = bounds.optimisation_cases(30)
    assert all(c.passed for c in cases.values())
    assert cases["range1"].value < Q(-1, 10)
    assert bounds.range3_check(30) <= Q(-1, 125)
    assert bounds.range3_check(30) < 0


def test_condition_thresholds_at_thirty():
    assert bounds.vw1_threshold(30) == Q(61, 90)
    assert bounds.vw2_exponents(30) == (Q(16, 13), Q(-31, 13))
    ok = bounds.condition_check("vw1", {"n": 30, "B2": "1/2"})
    assert ok.satisfied and ok.margin == Q(61, 90) - Q(1, 2)
    assert not bounds.condition_check("vw1", {"n": 30, "B2": "1"}).satisfied
    with pytest.raises(ValueError):
        bounds.condition_check("vw2", {"n": 30})


def test_differencing_lengths_at_critical_point():
    crit = bounds.critical_point()
    h1 = bounds.H_choice("averaged-H1", 30, crit)
    h2 = bounds.H_choice("averaged-H2", 30, crit)
    assert h1 == Q(28, 145)
    assert h2 == Q(6, 31)
    for n in range(29, 41):
        assert bounds.H_choice("averaged-H2", n, crit) >= bounds.H_choice("averaged-H1", n, crit)
    with pytest.raises(ValueError):
        bounds.H_choice("other", 30, crit)


def test_case_scan_closes_at_thirty():
    rep = bounds.minor_arc_scan(30, 16)
    assert rep.all_negative
