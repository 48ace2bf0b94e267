import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kstab.exactmath import RationalPolynomial, binom, binom_poly, interpolate, leading_two

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def poly(*coeffs):
    return RationalPolynomial(tuple(Fraction(c) for c in coeffs))


# binom -----------------------------------------------------------------

def test_binom_small_values():
    assert binom(4, 2) == 6
    assert binom(3, 0) == 1
    assert binom(30, 15) == 155117520


def test_binom_b_larger_than_a_is_zero():
    assert binom(2, 5) == 0
    assert binom(0, 1) == 0


def test_binom_rejects_negatives():
    with pytest.raises(ValueError):
        binom(-1, 0)
    with pytest.raises(ValueError):
        binom(3, -2)


def test_binom_pascal_recurrence_up_to_30():
    # independent Pascal-triangle oracle
    row = [1]
    for a in range(1, 31):
        row = [1] + [row[b - 1] + row[b] for b in range(1, a)] + [1]
        for b in range(a + 1):
            assert binom(a, b) == row[b]
        assert binom(a, 0) == binom(a, a) == 1


# binom_poly ------------------------------------------------------------

def test_binom_poly_examples():
    assert binom_poly(1, 1, 1) == poly(1, 1)
    assert binom_poly(2, 1, 2) == poly(1, Fraction(3, 2), Fraction(1, 2))
    assert binom_poly(1, 2, 0) == poly(0, 2)
    assert binom_poly(0, 3, -2) == poly(1)


def test_binom_poly_rejects_bad_arguments():
    with pytest.raises(ValueError):
        binom_poly(-1, 1, 0)
    with pytest.raises(ValueError):
        binom_poly(2, 0, 1)


def test_binom_poly_matches_binom_on_grid():
    for m in range(5):
        for step in range(1, 4):
            for shift in range(-3, 4):
                p = binom_poly(m, step, shift)
                assert p.degree() == m
                assert p.coefficient(m) == Fraction(step**m, math.factorial(m))
                kmin = 0 if shift >= 0 else -(shift // step)
                for k in range(kmin, 11):
                    assert step * k + shift >= 0
                    assert p(k) == binom(step * k + shift, m)


# interpolate -----------------------------------------------------------

def test_interpolate_line():
    assert interpolate([(0, 1), (1, 2)]) == poly(1, 1)


def test_interpolate_restriction_dimension_values():
    # 5, 12, 22 are dim counts of the restriction ring on P^1 x P^2 with
    # d = e = 1; rederived from scratch in tests/oracles.py
    import oracles

    values = [oracles.restricted_dim(1, 2, 1, 1, k) for k in (1, 2, 3)]
    assert values == [5, 12, 22]
    p = interpolate(list(zip((1, 2, 3), values)))
    assert p == poly(1, Fraction(5, 2), Fraction(3, 2))


def test_interpolate_single_point_is_constant():
    assert interpolate([(7, 4)]) == poly(4)


def test_interpolate_rejects_duplicate_nodes():
    with pytest.raises(ValueError, match="duplicate"):
        interpolate([(1, 2), (1, 3)])


def test_interpolate_rejects_empty_input():
    with pytest.raises(ValueError):
        interpolate([])


@given(st.lists(small_fractions, min_size=1, max_size=7))
def test_interpolate_inverts_evaluation(coeffs):
    p = RationalPolynomial(tuple(coeffs))
    nodes = range(max(p.degree() + 1, 1))
    assert interpolate([(k, p(k)) for k in nodes]) == p


# leading_two -----------------------------------------------------------

def test_leading_two_examples():
    assert leading_two(poly(1, Fraction(5, 2), Fraction(3, 2)), 2) == (Fraction(3, 2), Fraction(5, 2))
    assert leading_two(poly(1, 1), 1) == (1, 1)
    assert leading_two(poly(4), 0) == (4, 0)


def test_leading_two_rejects_degree_mismatch():
    with pytest.raises(ValueError, match="degree mismatch"):
        leading_two(poly(1, 1), 2)
    with pytest.raises(ValueError, match="degree mismatch"):
        leading_two(RationalPolynomial.zero(), 0)


# polynomial arithmetic -------------------------------------------------

def test_trailing_zeros_are_normalized():
    assert poly(1, 2, 0, 0) == poly(1, 2)
    assert poly(0, 0).degree() == -1
    assert RationalPolynomial.zero().coeffs == ()


def test_coefficients_stay_reduced():
    p = poly(Fraction(2, 4), Fraction(6, 9))
    assert p.coeffs[0].numerator == 1 and p.coeffs[0].denominator == 2
    assert p.coeffs[1] == Fraction(2, 3)


@given(
    st.lists(small_fractions, max_size=5),
    st.lists(small_fractions, max_size=5),
    st.integers(min_value=-6, max_value=6),
)
def test_ring_operations_agree_with_evaluation(cs, ds, k):
    p, q = RationalPolynomial(tuple(cs)), RationalPolynomial(tuple(ds))
    assert (p + q)(k) == p(k) + q(k)
    assert (p - q)(k) == p(k) - q(k)
    assert (p * q)(k) == p(k) * q(k)
    assert (3 * p)(k) == 3 * p(k)
