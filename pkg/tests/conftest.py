from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ctrec.laurent import LaurentPoly


def small_laurent(nvars=2, max_terms=4, exp_range=2, fractions=True):
    coeff = st.integers(-5, 5)
    if fractions:
        coeff = st.one_of(coeff, st.fractions(min_value=-3, max_value=3, max_denominator=4))
    key = st.tuples(*[st.integers(-exp_range, exp_range)] * nvars)
    return st.dictionaries(key, coeff, max_size=max_terms).map(lambda d: LaurentPoly(nvars, d))


def rationals():
    return st.fractions(min_value=-5, max_value=5, max_denominator=6)


def assert_canonical(p: LaurentPoly):
    for e, c in p.items():
        assert c != 0
        assert len(e) == p.nvars
        if isinstance(c, Fraction):
            assert c.denominator > 1


@pytest.fixture
def xy():
    return ["x1", "x2"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
