import math
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from quasisolve import BaseKey, QuasiGroup, Quasipolynomial

SQRT2 = math.sqrt(2.0)


def real_bases():
    mags = st.floats(0.3, 1.8, allow_nan=False)
    return st.builds(lambda m, neg: BaseKey.real(-m if neg else m), mags, st.booleans())


def complex_bases():
    return st.builds(BaseKey.complex, st.floats(0.3, 1.8), st.floats(0.1, math.pi - 0.1))


def groups(max_degree=3):
    def build(base, data):
        s, coeffs = data
        return QuasiGroup(base, tuple(coeffs[: (s + 1) * base.width]))
    coeffs = st.lists(st.floats(-1, 1, allow_nan=False), min_size=2 * (max_degree + 1),
                      max_size=2 * (max_degree + 1))
    return st.builds(build, st.one_of(real_bases(), complex_bases()),
                     st.tuples(st.integers(0, max_degree), coeffs))


def quasipolynomials(max_groups=3):
    return st.lists(groups(), min_size=0, max_size=max_groups).map(
        lambda gs: Quasipolynomial(tuple(gs)))


@pytest.fixture
def cos_pi8_rhs():
    return Quasipolynomial((QuasiGroup.trig(1.0, None, [0.0], [1.0], Fraction(1, 8)),))


@pytest.fixture
def sin_pi2_rhs():
    return Quasipolynomial((QuasiGroup.trig(1.0, None, [1.0], [0.0], Fraction(1, 2)),))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(acceptance.RESULTS.items()):
            terminalreporter.write_line(line)
