from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalar import (ONE, ZERO, DivisionByZero, IncompatibleRadicands, Ordering, Scalar,
                    ScalarParseError, arith, common_radicand, compare, frac_floor, parse_scalar)
from strategies import quadratic_scalars, small_fractions

S = parse_scalar


class TestArith:
    def test_rational_sum(self):
        assert arith(Fraction(1, 2), "add", Fraction(1, 3)) == Fraction(5, 6)

    def test_difference_of_squares(self):
        assert arith(S("(sqrt(5)-1)/2"), "mul", S("(sqrt(5)+1)/2")) == ONE

    def test_golden_difference(self):
        assert arith(S("(sqrt(5)-1)/2"), "sub", S("(3-sqrt(5))/2")) == S("sqrt(5)-2")

    def test_neg_and_abs(self):
        x = S("2-sqrt(5)")
        assert arith(x, "neg") == S("sqrt(5)-2")
        assert arith(x, "abs") == S("sqrt(5)-2")

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            arith(ONE, "div", S("sqrt(5)-sqrt(5)"))

    def test_division_by_zero_is_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_mixed_radicands(self):
        with pytest.raises(IncompatibleRadicands):
            arith(S("sqrt(2)"), "add", S("sqrt(3)"))

    def test_quadratic_division(self):
        x = S("1+sqrt(5)")
        assert x / x == ONE
        assert S("1") / S("(sqrt(5)-1)/2") == S("(sqrt(5)+1)/2")

    def test_zero_irrational_part_normalizes(self):
        x = S("sqrt(5)") - S("sqrt(5)") + Fraction(1, 3)
        assert x.is_rational
        assert x.radicand is None
        assert x == Fraction(1, 3)


class TestCompare:
    def test_examples(self):
        assert compare(S("sqrt(5)-2"), Fraction(1, 4)) is Ordering.LT
        assert compare(S("(sqrt(5)-1)/2"), S("(sqrt(5)-1)/2")) is Ordering.EQ
        assert compare(Fraction(2, 3), S("(3-sqrt(5))/2")) is Ordering.GT

    def test_rational_compares_with_any_radicand(self):
        assert S("sqrt(2)") > 1
        assert S("sqrt(3)") < 2

    def test_different_radicands_rejected(self):
        with pytest.raises(IncompatibleRadicands):
            compare(S("sqrt(2)"), S("sqrt(3)"))

    def test_unsupported_operand_named(self):
        with pytest.raises(TypeError, match="with float"):
            S("sqrt(2)") < 0.5


class TestFracFloor:
    @pytest.mark.parametrize("text,floor,frac", [
        ("5/3", 1, "2/3"),
        ("(sqrt(5)+1)/2", 1, "(sqrt(5)-1)/2"),
        ("-1/4", -1, "3/4"),
        ("-sqrt(5)", -3, "3-sqrt(5)"),
    ])
    def test_examples(self, text, floor, frac):
        assert frac_floor(S(text)) == (floor, S(frac))

    @given(quadratic_scalars())
    def test_round_trip(self, x):
        n, frac = frac_floor(x)
        assert n + frac == x
        assert ZERO <= frac < ONE


class TestFieldAxioms:
    @given(quadratic_scalars(), quadratic_scalars(), quadratic_scalars())
    def test_associative_and_distributive(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c

    @given(quadratic_scalars())
    def test_inverse(self, a):
        if a:
            assert a * (ONE / a) == ONE

    @given(small_fractions)
    def test_hash_matches_fraction(self, q):
        assert hash(Scalar(q)) == hash(q)


def assert_sign_matches_approx(x: Scalar, radicand: int):
    x = Scalar(x.rational_part, x.irrational_part, radicand)
    with mpmath.workdps(100):
        approx = x.approx(100)
        expected = (approx > 0) - (approx < 0)
    assert x.sign == expected


class TestSign:
    @settings(max_examples=500)
    @given(quadratic_scalars(radicand=5), st.sampled_from([2, 3, 5, 7, 13]))
    def test_sign_agrees_with_high_precision(self, x, radicand):
        assert_sign_matches_approx(x, radicand)

    @pytest.mark.slow
    @settings(max_examples=10_000, deadline=None)
    @given(quadratic_scalars(radicand=5), st.sampled_from([2, 3, 5, 7, 13]))
    def test_sign_agrees_with_high_precision_at_scale(self, x, radicand):
        assert_sign_matches_approx(x, radicand)

    def test_near_cancellation(self):
        # 161^2 - 5 * 72^2 = 1
        assert S("161-72*sqrt(5)").sign == 1
        assert S("72*sqrt(5)-161").sign == -1


class TestParse:
    @pytest.mark.parametrize("text,expected", [
        ("2/3", Scalar(Fraction(2, 3))),
        ("  1 / 2 + 1/2 * sqrt(5) ", Scalar(Fraction(1, 2), Fraction(1, 2), 5)),
        ("sqrt(20)", Scalar(0, 2, 5)),
        ("sqrt(4)", Scalar(2)),
        ("sqrt(1/2)", Scalar(0, Fraction(1, 2), 2)),
        ("0.125", Scalar(Fraction(1, 8))),
        ("-(3-sqrt(5))", Scalar(-3, 1, 5)),
        ("(7-3*sqrt(5))/4", Scalar(Fraction(7, 4), Fraction(-3, 4), 5)),
    ])
    def test_values(self, text, expected):
        assert S(text) == expected

    @given(quadratic_scalars())
    def test_str_parses_back(self, x):
        assert S(str(x)) == x

    @pytest.mark.parametrize("text,position", [
        ("", 0),
        ("1+", 2),
        ("2*x", 2),
        ("1/0", 1),
        ("sqrt(-2)", 5),
        ("(1", 2),
    ])
    def test_errors_carry_position(self, text, position):
        with pytest.raises(ScalarParseError) as info:
            S(text)
        assert info.value.position == position


class TestRendering:
    def test_to_decimal_rounds_down(self):
        assert S("2/3").to_decimal(4) == "0.6666"
        assert S("-2/3").to_decimal(4) == "-0.6667"
        assert S("sqrt(5)-2").to_decimal(12) == "0.236067977499"

    def test_to_decimal_zero_digits(self):
        assert S("7/2").to_decimal(0) == "3"

    def test_common_radicand(self):
        assert common_radicand([S("1/2"), S("sqrt(5)"), S("1-sqrt(5)")]) == 5
        assert common_radicand([S("1/2"), S("1/3")]) is None
        with pytest.raises(IncompatibleRadicands):
            common_radicand([S("sqrt(5)"), S("sqrt(2)")])
