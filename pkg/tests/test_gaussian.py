import json
from fractions import Fraction

import pytest
from hypothesis import given

from discrete_analytic.gaussian import GaussianRational, I, ONE, ZERO, as_gr, gr_arith

from conftest import gaussian_rationals, gr


def test_quotient_of_conjugates_is_i():
    assert gr_arith(gr(1, 1), gr(1, -1), "div") == I


def test_quotient_used_by_the_cubic_counterexample():
    # (-2+2i)(1-i) / 2 = (-2+2i+2i+2)/2 = 2i
    assert gr_arith(gr(-2, 2), gr(1, 1), "div") == gr(0, 2)


@given(gaussian_rationals)
def test_multiplicative_identity(a):
    assert gr_arith(a, ONE, "mul") == a


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        gr_arith(ONE, ZERO, "div")


def test_unknown_op():
    with pytest.raises(ValueError):
        gr_arith(ONE, ONE, "pow")


@given(gaussian_rationals, gaussian_rationals, gaussian_rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    if a:
        assert a * (1 / a) == ONE
        assert (b / a) * a == b


@given(gaussian_rationals)
def test_string_round_trip_is_bit_exact(a):
    assert GaussianRational.parse(str(a)) == a
    assert GaussianRational.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_reduced_storage():
    a = GaussianRational(Fraction(4, 6), Fraction(-10, 4))
    assert (a.re.numerator, a.re.denominator) == (2, 3)
    assert (a.im.numerator, a.im.denominator) == (-5, 2)
    assert a.to_json() == {"re": "2/3", "im": "-5/2"}


@pytest.mark.parametrize("text, expected", [
    ("3", gr(3)),
    ("-i", gr(0, -1)),
    ("2/3*i", gr(0, Fraction(2, 3))),
    ("1/2-3/4*i", gr(Fraction(1, 2), Fraction(-3, 4))),
    ("0+0*i", ZERO),
])
def test_parse_forms(text, expected):
    assert GaussianRational.parse(text) == expected


@pytest.mark.parametrize("bad", ["", "1/0", "x+i", "1++i"])
def test_parse_rejects_garbage(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        GaussianRational.parse(bad)


def test_immutable():
    a = gr(1, 2)
    with pytest.raises(AttributeError):
        a.re = Fraction(5)


def test_complex_and_float_are_not_silently_mixed():
    with pytest.raises(TypeError):
        gr(1) + 1.5
    with pytest.raises(TypeError):
        gr(1) * 1j


def test_as_gr_accepts_exact_conversions():
    assert as_gr(0.5) == gr(Fraction(1, 2))
    assert as_gr(1 + 2j) == gr(1, 2)
    assert as_gr("1+i") == gr(1, 1)


def test_norm_and_log_abs_on_huge_values():
    big = gr(3, 4) ** 400
    assert big.norm() == Fraction(25) ** 400
    assert big.log_abs() == pytest.approx(400 * 1.6094379124341003)


@given(gaussian_rationals)
def test_pickles(a):
    import pickle
    assert pickle.loads(pickle.dumps(a)) == a
