import random

import pytest

from discrete_analytic.gaussian import ZERO
from discrete_analytic.polynomial import ExactPolynomial1, ExactPolynomial2, poly_eval2

from conftest import gr


def test_z_squared_minus_z_at_one_one():
    z = ExactPolynomial2.variable_z()
    p = z ** 2 - z
    expected = gr(1, 1) * gr(1, 1) - gr(1, 1)
    assert poly_eval2(p, 1, 1) == expected == gr(-1, 1)


def test_zero_polynomial():
    assert poly_eval2(ExactPolynomial2(), 5, -7) == ZERO
    assert ExactPolynomial1().degree == -1


def test_falling_square_at_three():
    p = ExactPolynomial2({(2, 0): 1, (1, 0): -1})
    assert poly_eval2(p, 3, 0) == 6


def test_no_stored_zeros_and_trimmed_leading_coefficients():
    p = ExactPolynomial2({(1, 1): 0, (0, 0): 2})
    assert p.coefficients == {(0, 0): gr(2)}
    assert ExactPolynomial1([1, 2, 0, 0]).coefficients == (gr(1), gr(2))


def _horner(rows, x, y):
    # Horner in x with coefficients that are Horner polynomials in y
    acc = ZERO
    for row in reversed(rows):
        inner = ZERO
        for c in reversed(row):
            inner = inner * y + c
        acc = acc * x + inner
    return acc


def test_agrees_with_nested_horner_on_random_polynomials():
    rng = random.Random(3)
    for _ in range(100):
        dx, dy = rng.randint(0, 4), rng.randint(0, 4)
        rows = [[gr(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(dy + 1)]
                for _ in range(dx + 1)]
        p = ExactPolynomial2.from_dense(rows)
        x, y = rng.randint(-6, 6), rng.randint(-6, 6)
        assert poly_eval2(p, x, y) == _horner(rows, x, y)


def _interpolate_is_zero(p):
    d = max(p.degree, 0)
    return all(p(x, y) == 0 for x in range(d + 1) for y in range(d + 1))


def test_vanishing_on_grid_forces_zero_polynomial():
    # x^[2] y vanishes on many points but not on the full (d+1)x(d+1) grid
    p = ExactPolynomial2({(2, 1): 1, (1, 1): -1})
    assert not _interpolate_is_zero(p)
    assert _interpolate_is_zero(p - p)
    rng = random.Random(0)
    for _ in range(20):
        q = ExactPolynomial2({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 5)})
        assert not _interpolate_is_zero(q)


def test_univariate_shift_and_arithmetic():
    p = ExactPolynomial1([0, 0, 1])
    assert p.shift(1) == ExactPolynomial1([1, 2, 1])
    assert (p * p)(3) == 81
    assert (p - p).is_zero()
    assert ExactPolynomial1.monomial(3, 2)(2) == 16


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        ExactPolynomial2({(-1, 0): 1})
