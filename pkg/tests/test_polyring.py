from math import comb

import pytest
from hypothesis import given, strategies as st

from fc_poincare.core.polyring import (
    ONE,
    Q,
    ZERO,
    ZERO_DEGREE,
    Polynomial,
    eval_int,
    exact_div,
    from_json,
    geometric,
    monomial,
    one_minus_q_power,
    render_text,
    to_json,
)
from fc_poincare.exceptions import FCPoincareError, NonExactDivisionError, PolynomialZeroDivisionError

from conftest import A3, poly

polys = st.lists(st.integers(min_value=-40, max_value=40), max_size=7).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


class TestCanonicalForm:
    def test_trailing_zeros_are_trimmed(self):
        assert Polynomial([1, 0, 0]).coeffs == (1,)
        assert Polynomial([0, 0, 0]) == ZERO

    def test_zero_has_sentinel_degree(self):
        assert ZERO.degree == ZERO_DEGREE == -1
        assert ZERO.is_zero()

    def test_coefficient_access(self):
        p = poly(1, 0, -1)
        assert p.coeff(2) == -1
        assert p.coeff(9) == 0
        with pytest.raises(IndexError):
            p.coeff(-1)

    def test_non_integer_coefficients_are_rejected(self):
        with pytest.raises(TypeError):
            Polynomial([2.5])
        with pytest.raises(TypeError):
            Polynomial(["1"])

    def test_one_minus_q_power_needs_positive_exponent(self):
        assert one_minus_q_power(1) == poly(1, -1)
        with pytest.raises(ValueError):
            one_minus_q_power(0)

    def test_ints_mix_with_polynomials(self):
        assert 1 - Q == poly(1, -1)
        assert 3 * Q == poly(0, 3)
        assert Q + 0 == Q
        assert ONE == 1


class TestArithmetic:
    def test_addition_values(self):
        assert poly(1, 1) + poly(1, -1) == poly(2)
        assert A3 + ZERO == A3
        assert poly(0, 1, 1) + poly(0, 0, 1) == poly(0, 1, 2)

    def test_multiplication_values(self):
        assert one_minus_q_power(2) * one_minus_q_power(3) == poly(1, 0, -1, -1, 0, 1)
        assert A3 * ONE == A3
        assert poly(1, 1) ** 2 == poly(1, 2, 1)

    def test_coefficients_exceed_machine_words(self):
        p = poly(1, 1) ** 70
        assert p.coeff(35) == comb(70, 35)
        assert p.coeff(35) > 2 ** 63

    def test_exact_division_values(self):
        assert exact_div(poly(0, 0, 1, 1), monomial(2)) == poly(1, 1)
        assert exact_div(one_minus_q_power(4), one_minus_q_power(2)) == poly(1, 0, 1)
        assert exact_div(ZERO, Q) == ZERO

    def test_non_exact_division_raises(self):
        with pytest.raises(NonExactDivisionError):
            exact_div(poly(1, 1), Q)
        with pytest.raises(ArithmeticError):
            exact_div(poly(1), poly(0, 0, 1))

    def test_division_by_zero_raises(self):
        with pytest.raises(PolynomialZeroDivisionError):
            exact_div(A3, ZERO)
        with pytest.raises(FCPoincareError):
            exact_div(A3, ZERO)

    def test_evaluation(self):
        assert eval_int(A3, 1) == 14
        assert eval_int(A3, 0) == 1
        assert eval_int(one_minus_q_power(2), 2) == -3

    def test_geometric(self):
        assert geometric(1, 3) == poly(0, 1, 1, 1)
        assert geometric(2, 2) == monomial(2)
        assert geometric(5, 4) == ZERO

    def test_negative_monomial_exponent_raises(self):
        with pytest.raises(ValueError):
            monomial(-1)


class TestRendering:
    def test_text(self):
        assert render_text(poly(1, 0, -1, -1)) == "1 - q^2 - q^3"
        assert render_text(poly(0, -2, 0, 1)) == "-2*q + q^3"
        assert render_text(A3) == "1 + 3*q + 5*q^2 + 4*q^3 + q^4"
        assert render_text(ZERO) == "0"
        assert str(Q) == "q"

    def test_json(self):
        assert to_json(A3) == ["1", "3", "5", "4", "1"]
        assert to_json(ZERO) == ["0"]
        assert from_json(["1", "3", "5", "4", "1"]) == A3
        assert from_json(["0"]) == ZERO


@given(polys, polys, polys)
def test_ring_axioms(p, r, s):
    assert p + r == r + p
    assert p * r == r * p
    assert (p + r) + s == p + (r + s)
    assert (p * r) * s == p * (r * s)
    assert p * (r + s) == p * r + p * s
    assert p - p == ZERO
    assert p * ONE == p


@given(polys, nonzero_polys)
def test_exact_div_undoes_mul(p, d):
    assert exact_div(p * d, d) == p


@given(polys, polys, st.integers(min_value=-5, max_value=5))
def test_evaluation_is_a_ring_homomorphism(p, r, x):
    assert eval_int(p + r, x) == eval_int(p, x) + eval_int(r, x)
    assert eval_int(p * r, x) == eval_int(p, x) * eval_int(r, x)


@given(polys)
def test_json_rendering_is_stable(p):
    assert to_json(from_json(to_json(p))) == to_json(p)
