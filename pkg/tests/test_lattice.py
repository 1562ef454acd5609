import json

import pytest
from hypothesis import given, settings, strategies as st

from discrete_analytic.gaussian import GaussianRational
from discrete_analytic.lattice import (
    LatticeFunction,
    Window,
    WindowError,
    dbar,
    delta_x,
    delta_y,
    is_discrete_analytic,
    ratio_residual,
)

from conftest import gaussian_integers, gr

W = Window(0, 4, -2, 2)


def from_fn(fn, w=W):
    return LatticeFunction.from_callable(fn, w)


def z(x, y):
    return GaussianRational(x, y)


def test_delta_x_of_z_is_one():
    d = delta_x(from_fn(z))
    assert d.window == Window(0, 3, -2, 2)
    assert all(v == 1 for _, _, v in d.items())


def test_delta_y_of_z_is_i():
    d = delta_y(from_fn(z))
    assert d.window == Window(0, 4, -2, 1)
    assert all(v == gr(0, 1) for _, _, v in d.items())


def test_differences_of_constant_vanish():
    c = LatticeFunction.constant(gr(3, -1), W)
    assert delta_x(c).is_zero() and delta_y(c).is_zero() and dbar(c).is_zero()


def test_delta_x_of_falling_square():
    f = from_fn(lambda x, y: x * (x - 1))
    assert delta_x(f) == from_fn(lambda x, y: 2 * x, W.shrink(right=1))


def test_cubic_residual_at_origin():
    # differences of z^3 at the origin: dx = 1, dy = -i, dxdy = (1+i)^3 - 1 + i + 0 = -3+3i
    dx, dy, dxy = gr(1), gr(0, -1), z(1, 1) ** 3 - z(1, 0) ** 3 - z(0, 1) ** 3
    assert dxy == gr(-3, 3)
    expected = gr(1, -1) * dx + gr(1, 1) * dy + dxy
    assert expected == gr(-1, 1)
    assert dbar(from_fn(lambda x, y: z(x, y) ** 3))(0, 0) == expected


@pytest.mark.parametrize("power, analytic", [(0, True), (1, True), (2, True), (3, False)])
def test_powers_of_z(power, analytic):
    rep = is_discrete_analytic(from_fn(lambda x, y: z(x, y) ** power, Window(0, 4, 0, 4)))
    assert bool(rep) is analytic
    if not analytic:
        assert rep.point == (0, 0) and rep.residual == gr(-1, 1)


lattice_values = st.lists(gaussian_integers, min_size=25, max_size=25)


def _from_list(vals, w=Window(-2, 2, -1, 3)):
    it = iter(vals)
    return LatticeFunction.from_callable(lambda x, y: next(it), w)


@settings(max_examples=40)
@given(lattice_values)
def test_ratio_form_equals_scaled_dbar(vals):
    f = _from_list(vals)
    assert ratio_residual(f) == dbar(f) * (gr(1, -1) / 2)


@settings(max_examples=40)
@given(lattice_values)
def test_differences_commute(vals):
    f = _from_list(vals)
    assert delta_x(delta_y(f)) == delta_y(delta_x(f))


@settings(max_examples=40)
@given(lattice_values, lattice_values, gaussian_integers, gaussian_integers)
def test_dbar_is_linear(a, b, alpha, beta):
    f, g = _from_list(a), _from_list(b)
    assert dbar(f * alpha + g * beta) == dbar(f) * alpha + dbar(g) * beta


def test_degenerate_windows_are_errors():
    thin = from_fn(z, Window(0, 0, 0, 3))
    with pytest.raises(WindowError):
        delta_x(thin)
    with pytest.raises(WindowError):
        dbar(thin)
    with pytest.raises(WindowError):
        Window(2, 1, 0, 0)


def test_out_of_window_access():
    with pytest.raises(WindowError):
        from_fn(z)(10, 0)


def test_json_is_row_major_and_round_trips():
    f = from_fn(lambda x, y: z(x, y) ** 2)
    obj = json.loads(json.dumps(f.to_json()))
    assert obj["values"][0][1] == str(z(1, -2) ** 2)
    assert LatticeFunction.from_json(obj) == f


def test_csv_export_columns():
    text = from_fn(z, Window(0, 1, 0, 0)).to_csv().splitlines()
    assert text == ["x,y,re,im", "0,0,0.0,0.0", "1,0,1.0,0.0"]


def test_window_parse():
    assert Window.parse("0:3,-1:2") == Window(0, 3, -1, 2)
    with pytest.raises(WindowError):
        Window.parse("0:3")
