import json
import math
from fractions import Fraction

import pytest

from discrete_analytic.gaussian import GaussianRational
from discrete_analytic.lattice import Window
from discrete_analytic.products import PreconditionError, eval_expandable
from discrete_analytic.realization import (
    Realization,
    SpectrumError,
    eval_realization,
    exact_det,
    exact_solve,
    fourier_decay_check,
    rational_da_extend,
    realize_from_poles,
)
from discrete_analytic.zeta import zeta_by_extension

from conftest import gr


def test_scalar_example():
    r = Realization([[-1]], [1], [1])
    assert eval_realization(r, 3) == Fraction(1, 4)


def test_zero_input_gives_polynomial():
    r = Realization([[-1]], [0], [5], [1, 2])
    assert eval_realization(r, 4) == 9


def test_direct_sum_example():
    r = Realization([[-1, 0], [0, -2]], [1, 1], [1, 1])
    assert eval_realization(r, 0) == Fraction(3, 2)


@pytest.mark.parametrize("poles, p, fn", [
    ([(-1, 1)], None, lambda x: Fraction(1, x + 1)),
    ([], [0, 1], lambda x: x),
    ([(-1, 1), (-2, -1)], None, lambda x: Fraction(1, (x + 1) * (x + 2))),
])
def test_realize_from_poles(poles, p, fn):
    r = realize_from_poles(poles, p)
    assert all(eval_realization(r, x) == fn(x) for x in range(12))


def test_pole_on_lattice_rejected():
    with pytest.raises(SpectrumError):
        realize_from_poles([(2, 1)])


def test_hidden_integer_eigenvalue():
    # companion matrix of (x-1)(x-2): no diagonal entry reveals the eigenvalues
    r = Realization([[0, 1], [-2, 3]], [0, 1], [1, 0])
    with pytest.raises(SpectrumError):
        r.check_spectrum()
    with pytest.raises(SpectrumError):
        eval_realization(r, 2)


def test_float_realization_spectrum():
    r = Realization([[-0.5 + 0.25j]], [1.0], [1.0])
    assert not r.exact
    r.check_spectrum()
    assert eval_realization(r, 1) == pytest.approx(1 / (1.5 - 0.25j))
    with pytest.raises(SpectrumError):
        Realization([[3.0]], [1.0], [1.0]).check_spectrum()


def test_exact_linear_algebra():
    M = [[gr(2), gr(1)], [gr(1), gr(0, 1)]]
    assert exact_det(M) == gr(-1, 2)
    sol = exact_solve(M, [gr(1), gr(0)])
    assert M[0][0] * sol[0] + M[0][1] * sol[1] == 1
    assert M[1][0] * sol[0] + M[1][1] * sol[1] == 0


def test_shape_mismatch():
    with pytest.raises(ValueError):
        Realization([[1, 0]], [1], [1])


@pytest.mark.parametrize("poles", [[(-1, 1)], [(-1, 1), (-2, -1)]])
def test_decay_at_most_one(poles):
    assert fourier_decay_check(realize_from_poles(poles), 30) <= 1.05


def test_decay_of_polynomial():
    assert fourier_decay_check(realize_from_poles([], [1, 2, 3]), 30) == 0.0


def test_extension_restricts_exactly():
    zt = zeta_by_extension(20, Window(0, 6, -2, 2))
    r = realize_from_poles([(-1, 1)])
    f = rational_da_extend(r, zt, 20)
    assert all(eval_expandable(f, zt, x, 0) == Fraction(1, x + 1) for x in range(7))
    assert [f[n] for n in range(3)] == [1, Fraction(-1, 2), Fraction(1, 6)]


def test_extension_needs_table():
    zt = zeta_by_extension(5, Window(0, 2, 0, 0))
    with pytest.raises(PreconditionError):
        rational_da_extend(realize_from_poles([(-1, 1)]), zt, 10)


@pytest.mark.parametrize("r", [
    Realization([[gr(-1, 1)]], [gr(1, 0)], [gr(0, Fraction(1, 3))], [1]),
    Realization([[-0.5j]], [1.0], [2.0 + 1j]),
])
def test_json_round_trip(r):
    assert Realization.from_json(json.loads(json.dumps(r.to_json()))) == r


def test_gershgorin():
    r = Realization([[gr(-1), gr(0, 2)], [gr(0), gr(-3)]], [1, 1], [1, 1])
    assert r.gershgorin_bound() == pytest.approx(3.0)
    assert math.isfinite(complex(eval_realization(r, 0)).real)
    assert isinstance(eval_realization(r, 0), GaussianRational)
