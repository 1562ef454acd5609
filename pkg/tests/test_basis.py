import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from discrete_analytic.basis import (
    CoefficientSeries,
    CoefficientSeries2,
    CompatibilityError,
    antidifference_1d,
    factorial_poly,
    falling,
    fourier_1d,
    fourier_2d,
    inverse_fourier_1d,
    inverse_fourier_2d,
    joint_primitive,
)
from discrete_analytic.gaussian import GaussianRational
from discrete_analytic.lattice import LatticeFunction, Window, WindowError
from discrete_analytic.polynomial import ExactPolynomial1

from conftest import gaussian_integers, gr


def binomial_transform(values):
    # c(n) = sum_k (-1)^(n-k) C(n,k) f(k) / n!, written out term by term
    out = []
    for n in range(len(values)):
        acc = GaussianRational(0)
        for k in range(n + 1):
            acc = acc + values[k] * ((-1) ** (n - k) * math.comb(n, k))
        out.append(acc / math.factorial(n))
    return out


def test_factorial_poly_low_degrees():
    assert factorial_poly(0) == ExactPolynomial1([1])
    assert factorial_poly(2) == ExactPolynomial1([0, -1, 1])


@pytest.mark.parametrize("n", range(1, 7))
def test_factorial_poly_vanishes_below_degree(n):
    p = factorial_poly(n)
    assert all(p(x) == 0 for x in range(n))
    assert p(n) == math.factorial(n)
    assert p(-3) == falling(-3, n)


def test_square_in_factorial_basis():
    c = fourier_1d([x * x for x in range(6)])
    assert [c[n] for n in range(6)] == [0, 1, 1, 0, 0, 0]


def test_basis_element_is_indicator():
    c = fourier_1d([falling(x, 3) for x in range(7)])
    assert c.coeffs == (0, 0, 0, 1)


def test_reciprocal_coefficients():
    vals = [GaussianRational(Fraction(1, x + 1)) for x in range(15)]
    c = fourier_1d(vals)
    assert list(c.coeffs) == binomial_transform(vals)
    assert all(c[n] == Fraction((-1) ** n, math.factorial(n + 1)) for n in range(15))


@settings(max_examples=30)
@given(st.lists(gaussian_integers, min_size=1, max_size=12))
def test_agrees_with_binomial_transform(vals):
    c = fourier_1d(vals)
    assert [c[n] for n in range(len(vals))] == binomial_transform(vals)


@settings(max_examples=30)
@given(st.lists(gaussian_integers, min_size=1, max_size=20))
def test_round_trip_1d(vals):
    c = fourier_1d(vals)
    assert [inverse_fourier_1d(c, x) for x in range(len(vals))] == vals


@pytest.mark.parametrize("coeffs, x, expected", [([0, 1], 7, 7), ([0, 1, 1], 3, 9), ([], 4, 0)])
def test_inverse_examples(coeffs, x, expected):
    assert inverse_fourier_1d(CoefficientSeries(tuple(coeffs)), x) == expected


def test_inverse_rejects_negative_x():
    with pytest.raises(ValueError):
        inverse_fourier_1d([1], -1)


def test_unknown_basis_tag():
    with pytest.raises(ValueError):
        CoefficientSeries((1,), "chebyshev")


def test_series_json_round_trip():
    c = CoefficientSeries((gr(1, 2), gr(Fraction(1, 3))), "zeta")
    assert CoefficientSeries.from_json(c.to_json()) == c
    f = CoefficientSeries((1 + 2j, 0.5))
    assert f.to_json()["coeffs"][0] == [1.0, 2.0]
    assert CoefficientSeries.from_json(f.to_json()) == f


def test_fourier_2d_examples():
    w = Window(0, 4, 0, 4)
    f = LatticeFunction.from_callable(lambda x, y: falling(x, 2) * falling(y, 1), w)
    assert fourier_2d(f).coeffs == {(2, 1): gr(1)}
    z = LatticeFunction.from_callable(lambda x, y: GaussianRational(x, y), w)
    assert fourier_2d(z).coeffs == {(1, 0): gr(1), (0, 1): gr(0, 1)}


def test_fourier_2d_round_trip_random():
    rng = random.Random(7)
    w = Window(0, 5, 0, 5)
    for _ in range(10):
        f = LatticeFunction.from_callable(lambda x, y: gr(rng.randint(-9, 9), rng.randint(-9, 9)), w)
        assert inverse_fourier_2d(fourier_2d(f), w) == f


def test_fourier_2d_needs_anchored_window():
    f = LatticeFunction.constant(gr(1), Window(-1, 2, 0, 2))
    with pytest.raises(WindowError):
        fourier_2d(f)


def test_coefficient_differences_match_lattice():
    c = CoefficientSeries2({(3, 1): gr(2, 1), (0, 2): gr(1)})
    w = Window(0, 5, 0, 5)
    from discrete_analytic.lattice import delta_x, delta_y
    assert c.delta_x().on_window(w).restrict(Window(0, 4, 0, 5)) == delta_x(c.on_window(w))
    assert c.delta_y().on_window(w).restrict(Window(0, 5, 0, 4)) == delta_y(c.on_window(w))


@pytest.mark.parametrize("n", range(6))
def test_antidifference_of_basis(n):
    g = antidifference_1d(CoefficientSeries((0,) * n + (1,)))
    assert g.coeffs == (0,) * (n + 1) + (GaussianRational(Fraction(1, n + 1)),)


def test_antidifference_of_zero_and_one():
    assert antidifference_1d(CoefficientSeries(())).coeffs == ()
    assert antidifference_1d(CoefficientSeries((1,))).coeffs == (0, 1)


def test_joint_primitive_examples():
    one = CoefficientSeries2({(0, 0): gr(1)})
    i = CoefficientSeries2({(0, 0): gr(0, 1)})
    assert joint_primitive(one, i).coeffs == {(1, 0): gr(1), (0, 1): gr(0, 1)}
    zero = CoefficientSeries2({})
    assert joint_primitive(zero, zero).coeffs == {}
    y1 = CoefficientSeries2({(0, 1): gr(1)})
    x1 = CoefficientSeries2({(1, 0): gr(1)})
    assert joint_primitive(y1, x1).coeffs == {(1, 1): gr(1)}


def test_joint_primitive_incompatible():
    with pytest.raises(CompatibilityError):
        joint_primitive(CoefficientSeries2({(0, 1): gr(1)}), CoefficientSeries2({}))
