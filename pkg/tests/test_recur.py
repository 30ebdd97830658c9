import pytest

from fc_poincare.core.polyring import ONE, Q, eval_int, monomial, one_minus_q_power
from fc_poincare.exceptions import IndexOutOfRangeError, TableTooSmallError
from fc_poincare.methods import fcenum
from fc_poincare.methods.recur import (
    a_last_direct,
    a_last_via_table,
    b_view_residual,
    binomial,
    build_coeff_table,
    check_B_at_one,
    check_B_at_zero,
    check_basic_recurrence,
    check_catalan_recurrence,
    check_subdiagonal,
    last_generator_row,
    poincare_by_coefficient_sums,
    poincare_by_main_recurrence,
    poincare_by_partition,
    poincare_sequence_by_main_recurrence,
)

from conftest import A3, poly, ranks

B42_IN_B_VIEW = poly(1, 0, -1, -2, -1, 1, 1, 1)


class TestCoeffTable:
    def test_known_entries(self, coeff_table):
        assert coeff_table.b(1, 1) == ONE
        assert coeff_table.b(2, 1) == one_minus_q_power(2)
        assert coeff_table.b(3, 2) == poly(1, 0, -1, -1)
        assert coeff_table.b(4, 1) == one_minus_q_power(2) * one_minus_q_power(3) * one_minus_q_power(4)
        assert coeff_table.b(4, 2) == B42_IN_B_VIEW

    def test_diagonal_is_one(self, coeff_table):
        assert all(coeff_table.b(j, j) == ONE for j in range(1, coeff_table.N + 1))

    def test_b_and_B_views(self, coeff_table):
        assert coeff_table.B(4, 3) == B42_IN_B_VIEW
        assert coeff_table.B(5, 1) == ONE
        assert coeff_table.B(2, 2) == one_minus_q_power(2)

    def test_bounds(self):
        table = build_coeff_table(3)
        with pytest.raises(TableTooSmallError) as excinfo:
            table.b(4, 1)
        assert (excinfo.value.needed, excinfo.value.available) == (4, 3)
        with pytest.raises(IndexOutOfRangeError):
            table.b(3, 4)
        with pytest.raises(IndexOutOfRangeError):
            table.B(3, 0)
        with pytest.raises(IndexOutOfRangeError):
            build_coeff_table(0)

    def test_injected_fault_corrupts_row_three(self):
        clean, faulty = build_coeff_table(5), build_coeff_table(5, inject_fault=True)
        assert faulty.rows[:2] == clean.rows[:2]
        assert faulty.b(3, 1) == clean.b(3, 1)
        assert faulty.b(3, 2) == poly(3, 0, -1, -1)


class TestLastGenerator:
    def test_row_three(self):
        assert last_generator_row(3) == (poly(0, 1, 2, 2), poly(0, 1, 2, 1, 1), poly(0, 1, 1, 1))

    def test_row_zero_is_empty(self):
        assert last_generator_row(0) == ()

    @pytest.mark.parametrize("n", range(1, 9))
    def test_first_generator(self, n):
        assert last_generator_row(n)[0] == Q * poincare_by_partition(n - 1)

    @pytest.mark.parametrize("n", ranks(1, 13, slow_from=10))
    def test_rows_match_enumeration(self, n):
        assert last_generator_row(n) == fcenum.oracle_triangle_row(n)

    def test_direct_recurrence_validates_inputs(self):
        with pytest.raises(IndexOutOfRangeError):
            a_last_direct(3, 4, last_generator_row(2))
        with pytest.raises(IndexOutOfRangeError):
            a_last_direct(3, 1, last_generator_row(1))

    def test_via_table_values(self, coeff_table):
        a = [poincare_by_partition(m) for m in range(3)]
        assert a_last_via_table(2, 2, coeff_table, a) == poly(0, 1, 1)
        assert a_last_via_table(3, 2, coeff_table, a) == poly(0, 1, 2, 1, 1)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_via_table_matches_direct(self, coeff_table, n):
        a = [poincare_by_partition(m) for m in range(n)]
        row = last_generator_row(n)
        for j in range(1, n + 1):
            assert a_last_via_table(n, j, coeff_table, a) == row[j - 1]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_row_at_one_is_the_catalan_triangle(self, n):
        row = last_generator_row(n)
        for j in range(1, n + 1):
            assert eval_int(row[j - 1], 1) == j * binomial(2 * n - j + 1, n) // (n + 1)


class TestPoincareMethods:
    def test_partition(self):
        assert poincare_by_partition(0) == ONE
        assert poincare_by_partition(2) == poly(1, 2, 2)
        assert poincare_by_partition(3) == A3

    def test_main_recurrence(self, coeff_table):
        assert poincare_by_main_recurrence(0, coeff_table) == ONE
        assert poincare_by_main_recurrence(1, coeff_table) == poly(1, 1)
        assert poincare_by_main_recurrence(3, coeff_table) == A3

    def test_coefficient_sums(self, coeff_table):
        assert poincare_by_coefficient_sums(0, coeff_table) == ONE
        assert poincare_by_coefficient_sums(3, coeff_table) == A3

    def test_methods_agree(self, coeff_table):
        sequence = poincare_sequence_by_main_recurrence(15, coeff_table)
        for n in range(16):
            expected = poincare_by_partition(n)
            assert sequence[n] == expected
            assert poincare_by_coefficient_sums(n, coeff_table) == expected

    def test_main_recurrence_needs_one_more_row(self):
        with pytest.raises(TableTooSmallError):
            poincare_by_main_recurrence(3, build_coeff_table(3))

    @pytest.mark.parametrize("n", range(0, 21))
    def test_value_at_one_is_catalan(self, n):
        assert eval_int(poincare_by_partition(n), 1) == fcenum.catalan(n + 1)


class TestIdentities:
    def test_binomial(self):
        assert binomial(5, 2) == 10
        assert binomial(1, 2) == 0
        assert binomial(0, 3) == 0
        assert binomial(3, -1) == 0

    def test_specialization_values(self, coeff_table):
        assert eval_int(coeff_table.B(4, 2), 1) == -2
        assert all(eval_int(coeff_table.B(j, 1), 1) == 1 for j in range(1, 10))
        assert all(eval_int(coeff_table.B(j, j), 1) == 0 for j in range(2, 10))

    def test_specializations_up_to_twenty(self):
        table = build_coeff_table(20)
        for j in range(1, 21):
            for k in range(1, j + 1):
                assert check_B_at_one(j, k, table)
                assert check_B_at_zero(j, k, table)

    def test_catalan_recurrence(self):
        assert all(check_catalan_recurrence(n) for n in range(1, 21))
        with pytest.raises(IndexOutOfRangeError):
            check_catalan_recurrence(0)

    def test_basic_recurrence(self):
        for n in range(2, 10):
            for j in range(2, n + 1):
                assert check_basic_recurrence(n, j)
        with pytest.raises(IndexOutOfRangeError):
            check_basic_recurrence(3, 1)

    def test_subdiagonal(self, coeff_table):
        assert all(check_subdiagonal(j, coeff_table) for j in range(2, coeff_table.N + 1))
        assert coeff_table.b(5, 4) == ONE - (monomial(2) + monomial(3) + monomial(4) + monomial(5))

    def test_b_view_residual_vanishes(self, coeff_table):
        for j in range(3, coeff_table.N + 1):
            for k in range(2, j):
                assert b_view_residual(coeff_table, j, k).is_zero()

    def test_b_view_residual_detects_fault(self):
        faulty = build_coeff_table(6, inject_fault=True)
        assert not b_view_residual(faulty, 3, 2).is_zero()
