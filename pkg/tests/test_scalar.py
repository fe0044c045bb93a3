import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from socineff.errors import ModeMismatch
from socineff.scalar import EXACT, FLOAT, INF, NEG_INF, ext_add, ext_div, ext_mul, ext_sum, format_scalar, to_scalar


class TestConversion:
    def test_exact_from_strings_and_floats(self):
        assert to_scalar("3/7") == Fraction(3, 7)
        assert to_scalar(0.9) == Fraction(9, 10)
        assert to_scalar("1e-3") == Fraction(1, 1000)
        assert isinstance(to_scalar(2), Fraction)

    def test_float_mode_rejects_rational_strings(self):
        with pytest.raises(ModeMismatch):
            to_scalar("1/3", FLOAT)
        assert to_scalar("1/4", FLOAT, coerce=True) == 0.25

    @pytest.mark.parametrize("bad", ["abc", "1/0", True, None, math.nan])
    def test_bad_values(self, bad):
        with pytest.raises(ModeMismatch):
            to_scalar(bad, EXACT)


class TestExtendedArithmetic:
    def test_division_conventions(self):
        assert ext_div(Fraction(0), Fraction(0)) == 0
        assert ext_div(Fraction(-1, 2), Fraction(0)) == NEG_INF
        assert ext_div(Fraction(1, 2), Fraction(0)) == INF
        assert ext_div(Fraction(1), Fraction(4)) == Fraction(1, 4)

    def test_float_tolerance(self):
        assert ext_div(1e-12, 1e-13, tol=1e-9) == 0

    def test_infinity_times_zero(self):
        assert ext_mul(INF, Fraction(0)) == 0
        assert ext_mul(Fraction(0), NEG_INF) == 0
        assert ext_mul(Fraction(-2), INF) == NEG_INF

    def test_opposite_infinities_do_not_add(self):
        with pytest.raises(ArithmeticError):
            ext_add(INF, NEG_INF)
        assert ext_sum([INF, Fraction(3)]) == INF

    @given(st.fractions(), st.fractions())
    def test_finite_values_behave_normally(self, a, b):
        assert ext_add(a, b) == a + b
        assert ext_mul(a, b) == a * b


def test_format():
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert format_scalar(Fraction(2)) == "2"
    assert format_scalar(INF) == "inf"
    assert format_scalar(0.5) == "0.5"
