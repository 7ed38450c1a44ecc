from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_canonical, rationals, small_laurent
from ctrec.laurent import (
    DimensionError,
    ExponentOverflowError,
    LaurentPoly,
    add,
    coeff,
    coeff_of_product,
    constant_term,
    is_homogeneous_degree0,
    mul,
    power,
    substitute_one,
)

ZERO2 = LaurentPoly.zero(2)
ONE2 = LaurentPoly.one(2)


def L(terms, n=2):
    return LaurentPoly(n, terms)


# 1 - x2/x1, 1 - x1/x2
R1 = L({(0, 0): 1, (-1, 1): -1})
R2 = L({(0, 0): 1, (1, -1): -1})
POINTS = [(Fraction(2), Fraction(3)), (Fraction(-1, 2), Fraction(5, 7)), (Fraction(7), Fraction(-3, 4))]


def f_r1(x1, x2):
    return 1 - x2 / x1


def f_r2(x1, x2):
    return 1 - x1 / x2


class TestExamples:
    def test_add_cancellation(self):
        assert R1 + L({(-1, 1): 1}) == ONE2

    def test_add_zero(self):
        assert R1 + ZERO2 == R1

    def test_add_merge(self):
        assert R1 + R2 == L({(0, 0): 2, (1, -1): -1, (-1, 1): -1})

    def test_mul_hand_expansion(self):
        expected = L({(0, 0): 2, (1, -1): -1, (-1, 1): -1})
        assert R1 * R2 == expected
        for x1, x2 in POINTS:
            assert expected.evaluate((x1, x2)) == f_r1(x1, x2) * f_r2(x1, x2)

    def test_mul_identity(self):
        assert R1 * ONE2 == R1

    def test_mul_single_distribution(self):
        assert R1 * L({(-1, 1): 1}) == L({(-1, 1): 1, (-2, 2): -1})

    def test_pow_square(self):
        expected = L({(0, 0): 1, (-1, 1): -2, (-2, 2): 1})
        assert R1**2 == expected
        for x1, x2 in POINTS:
            assert expected.evaluate((x1, x2)) == f_r1(x1, x2) ** 2

    def test_pow_zero_and_zero_base(self):
        assert R1**0 == ONE2
        assert ZERO2**1 == ZERO2
        assert ZERO2**0 == ONE2

    def test_coeff(self):
        p = L({(0, 0): 2, (1, -1): -1, (-1, 1): -1})
        assert coeff(p, (0, 0)) == 2
        assert coeff(p, (5, 5)) == 0
        assert coeff(R1**2, (-1, 1)) == -2

    def test_coeff_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            coeff(R1, (0, 0, 0))

    def test_constant_term(self):
        assert constant_term(R1 * R2) == 2
        assert constant_term(R1) == 1
        assert constant_term(ZERO2) == 0

    def test_homogeneity(self):
        assert is_homogeneous_degree0(R1)
        assert not is_homogeneous_degree0(LaurentPoly.variable(2, 1))
        assert is_homogeneous_degree0(ZERO2)

    def test_substitute_one(self):
        assert substitute_one(R1, 2) == LaurentPoly(1, {(0,): 1, (-1,): -1})
        assert substitute_one(ONE2, 1) == LaurentPoly.one(1)
        assert substitute_one(R1 * R2, 1) == LaurentPoly(1, {(0,): 2, (-1,): -1, (1,): -1})

    def test_substitute_one_out_of_range(self):
        with pytest.raises(IndexError):
            substitute_one(R1, 3)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            add(R1, LaurentPoly.one(3))
        with pytest.raises(DimensionError):
            mul(R1, LaurentPoly.one(3))

    def test_exponent_overflow(self):
        big = LaurentPoly.monomial((2**30, 0))
        with pytest.raises(ExponentOverflowError):
            big * big

    def test_rational_coefficients_lowest_terms(self):
        p = L({(0, 0): Fraction(2, 4), (1, 0): Fraction(4, 2)})
        assert p.coeff((0, 0)) == Fraction(1, 2)
        assert isinstance(p.coeff((1, 0)), int)
        assert_canonical(p)

    def test_functional_aliases(self):
        assert add(R1, R2) == R1 + R2
        assert mul(R1, R2) == R1 * R2
        assert power(R1, 3) == R1 * R1 * R1

    def test_coeff_of_product_matches_full_product(self):
        p = R1**3 * R2
        q = R2**2 + R1
        for e in [(0, 0), (1, -1), (-2, 2), (3, 0)]:
            assert coeff_of_product(p, q, e) == (p * q).coeff(e)


@settings(max_examples=60, deadline=None)
@given(small_laurent(), small_laurent(), small_laurent())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO2 == p
    assert p * ONE2 == p
    for out in (p + q, p * q, p - q, p * r):
        assert_canonical(out)


@settings(max_examples=60, deadline=None)
@given(small_laurent(), small_laurent(), rationals(), rationals())
def test_constant_term_linear(p, q, alpha, beta):
    lhs = constant_term(p.scale(alpha) + q.scale(beta))
    assert lhs == alpha * constant_term(p) + beta * constant_term(q)


@settings(max_examples=40, deadline=None)
@given(small_laurent(max_terms=3), st.integers(0, 3), st.integers(0, 3))
def test_pow_adds_exponents(p, j, k):
    assert p ** (j + k) == (p**j) * (p**k)
    assert_canonical(p ** (j + k))


@settings(max_examples=40, deadline=None)
@given(small_laurent(), small_laurent(), st.tuples(rationals(), rationals()))
def test_product_evaluates_pointwise(p, q, point):
    if 0 in point:
        return
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


def _homogeneous0():
    key = st.integers(-2, 2).map(lambda v: (v, -v))
    return st.dictionaries(key, st.integers(-4, 4), max_size=3).map(lambda d: LaurentPoly(2, d))


@settings(max_examples=40, deadline=None)
@given(_homogeneous0(), _homogeneous0())
def test_homogeneity_closed(p, q):
    assert is_homogeneous_degree0(p) and is_homogeneous_degree0(q)
    assert is_homogeneous_degree0(p * q)
    assert is_homogeneous_degree0(p + q)
