import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from quartic_delta.poly import IntPolynomial
from quartic_delta.weights import WeightSpec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def fermat6() -> IntPolynomial:
    return IntPolynomial.diagonal([1, 1, 1, -1, -1, -1])


@pytest.fixture
def centred_weight():
    def make(n: int) -> WeightSpec:
        return WeightSpec((Fraction(1, 2),) * n)

    return make



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k].line())
