"""Tests for the recurrence tables and the rigorous exponent checks."""

import math

import pytest
from hypothesis import given, strategies as st

from aszcolor import (
    build_table,
    closed_form_exponent,
    closed_form_holds,
    compare_mubayi_vishwanathan,
    exponent_ratio,
    log2_bracket,
    mv_exponent,
    verify_bound_chain,
)
from aszcolor.bounds import _scaled_floor_log2

REC4 = build_table("rec4", 3000)
REC2 = build_table("rec2", 3000)


class TestBuildTable:
    def test_rec4_first_values(self):
        assert REC4.values[:6] == (1, 2, 3, 4, 5, 7)

    def test_rec2_first_values(self):
        assert REC2.values[:6] == (1, 2, 3, 5, 7, 10)

    def test_recurrence_holds_at_every_index(self):
        for k in range(REC4.k_max):
            assert REC4[k + 1] == REC4[k] + REC4[k >> 2]
            assert REC2[k + 1] == REC2[k] + REC2[k >> 1]

    def test_tables_are_strictly_increasing(self):
        assert all(REC4[k] < REC4[k + 1] for k in range(REC4.k_max))

    def test_rec4_below_rec2_below_powers_of_two(self):
        for k in range(201):
            assert REC4[k] <= REC2[k] <= 1 << k

    def test_len_and_k_max(self):
        t = build_table("rec4", 10)
        assert len(t) == 11 and t.k_max == 10

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            build_table("rec3", 5)
        with pytest.raises(ValueError):
            build_table("rec4", -1)


class TestExponents:
    def test_closed_form_values(self):
        assert closed_form_exponent(1) == 1.0
        assert closed_form_exponent(2) == 2.25
        assert closed_form_exponent(4) == 4.0
        assert closed_form_exponent(16) == 9.0

    def test_mv_values(self):
        assert mv_exponent(1) == 0.0
        assert mv_exponent(4) == 3.0
        assert mv_exponent(1024) == 55.0

    def test_ratio_at_large_k(self):
        # (22^2/4) / ((20^2 + 20)/2) = 121/210
        assert math.isclose(exponent_ratio(1 << 20), 121 / 210, rel_tol=1e-12)

    def test_ratio_decreases_toward_half(self):
        last = exponent_ratio(4)
        for j in range(3, 31):
            cur = exponent_ratio(1 << j)
            assert cur < last
            last = cur
        assert 0.5 < last < 0.6

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            closed_form_exponent(0)
        with pytest.raises(ValueError):
            mv_exponent(0)
        with pytest.raises(ValueError):
            exponent_ratio(1)


class TestLog2Bracket:
    def test_small_values(self):
        lo, hi = log2_bracket(8)
        assert lo <= 3.0 <= hi and hi - lo < 1e-8

    def test_power_of_two_beyond_float_mantissa(self):
        lo, hi = log2_bracket(1 << 100)
        assert lo <= 100.0 <= hi

    def test_large_table_value(self):
        x = REC4[3000]
        lo, hi = log2_bracket(x)
        assert lo < hi
        assert hi - lo < 1e-8
        assert lo <= x.bit_length() <= hi + 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            log2_bracket(0)

    @given(k=st.integers(1, 3000))
    def test_bracket_contains_bit_length_bounds(self, k):
        x = REC4[k]
        lo, hi = log2_bracket(x)
        assert x.bit_length() - 1 <= hi
        assert lo <= x.bit_length()


class TestClosedFormHolds:
    def test_exact_equality_at_k1(self):
        # log2(2) = 1 = (log2 4)^2 / 4 exactly; the power-of-two escalation
        # must decide the tie in favor of <=
        assert closed_form_holds(1, 2)

    def test_exact_equality_at_k4(self):
        # log2(16) = 4 = (log2 16)^2 / 4 exactly
        assert closed_form_holds(4, 16)
        assert not closed_form_holds(4, 17)

    def test_clear_cases(self):
        assert closed_form_holds(2, 3)
        assert not closed_form_holds(1, 3)

    def test_scaled_floor_log2(self):
        # floor(256 * log2 12) = 917, checked against float arithmetic
        assert _scaled_floor_log2(12, 8) == 917
        assert _scaled_floor_log2(12, 8) == math.floor(256 * math.log2(12))
        assert _scaled_floor_log2(1 << 9, 4) == 9 << 4

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            closed_form_holds(0, 1)
        with pytest.raises(ValueError):
            closed_form_holds(1, 0)

    @given(k=st.integers(1, 3000))
    def test_holds_on_the_table(self, k):
        assert closed_form_holds(k, REC4[k])


class TestVerifyBoundChain:
    def test_small_chain_is_clean(self):
        rep = verify_bound_chain(64)
        assert rep.ok
        assert rep.failures == ()
        assert rep.checked == 65
        assert len(rep.rows) == 64  # one row per k >= 1
        assert [r.k for r in rep.rows[:3]] == [1, 2, 3]

    def test_row_columns_are_consistent(self):
        rep = verify_bound_chain(32)
        for r in rep.rows:
            assert r.passed
            assert abs(r.closed_form - closed_form_exponent(r.k)) < 1e-12
            assert abs(r.mv - mv_exponent(r.k)) < 1e-12
            assert r.log2_value <= r.closed_form + 1e-6

    def test_rejects_tiny_k_max(self):
        with pytest.raises(ValueError):
            verify_bound_chain(3)


class TestCompareMV:
    def test_no_failures_up_to_2048(self):
        rep = compare_mubayi_vishwanathan(1, 2048)
        assert rep.ok and rep.checked == 2048

    def test_k10_is_the_first_improvement(self):
        rep = compare_mubayi_vishwanathan(1, 16)
        by_k = {r.k: r for r in rep.rows}
        assert not by_k[9].passed
        assert by_k[10].passed
        assert math.isclose(by_k[10].closed_form, 7.0807296617878555, rel_tol=1e-12)
        assert math.isclose(by_k[10].mv, 7.178567181244671, rel_tol=1e-12)

    def test_small_k_not_improved_without_failure(self):
        # below k = 10 the closed form may lose; that is expected, not a failure
        rep = compare_mubayi_vishwanathan(4, 4)
        assert rep.ok
        assert not rep.rows[0].passed

    def test_row_sampling_caps_output(self):
        rep = compare_mubayi_vishwanathan(1, 100_000, max_rows=100)
        assert rep.ok
        assert len(rep.rows) <= 102  # stride samples plus the forced endpoint
        assert rep.rows[-1].k == 100_000

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            compare_mubayi_vishwanathan(0, 5)
        with pytest.raises(ValueError):
            compare_mubayi_vishwanathan(5, 4)
