import math

import numpy as np
import pytest

from discrete_analytic.gaussian import GaussianRational, I
from discrete_analytic.lattice import Window, delta_y
from discrete_analytic.operators import (
    IDENTITIES,
    OperatorMatrix,
    bracket_check,
    commutator_A_check,
    deltay_check,
    deltay_series,
    deltay_series_norm,
    fock_dominance,
    kernel_eval,
    kernel_gram,
    matrix_of,
    random_lattice_functions,
    run_identities,
    shift_relations,
)

from conftest import gr

IDS = {ident.name: ident for ident in IDENTITIES}


def test_delta_x_matrix():
    m = matrix_of("delta_x", 3)
    nz = {(i, j) for i in range(3) for j in range(3) if m[i, j]}
    assert nz == {(0, 1), (1, 2)}
    assert m.band == (0, 1)


def test_z_matrix_first_column():
    m = matrix_of("Z", 3)
    assert [m[i, 0] for i in range(3)] == [0, 1, 0]


def test_real_part_diagonal():
    m = matrix_of("A_reZ", 8)
    assert [m[n, n] for n in range(8)] == list(range(8))
    assert m.band == (1, 1)


def test_z_adjoint_is_conjugate_transpose():
    z, za = matrix_of("Z", 6), matrix_of("Z_adj", 6)
    assert not z.adjoint().mismatches(za)


def test_delta_y_matrix_columns(wide_table):
    # column n holds the e-coefficients of delta_y e_n = delta_y zeta_n / n!
    m = matrix_of("delta_y", 6)
    assert m[0, 1] == I
    assert m[0, 2] == I * (gr(-1, 1) / 2)


def test_band_violation_rejected():
    with pytest.raises(ValueError):
        OperatorMatrix(matrix_of("Z", 4).entries, (0, 0))
    with pytest.raises(ValueError):
        matrix_of("curl", 4)


@pytest.fixture(scope="module")
def functions():
    return random_lattice_functions(20, Window(0, 7, -3, 4), seed=3)


@pytest.mark.parametrize("name", [i.name for i in IDENTITIES if i.expected])
def test_identities_hold_in_lattice_mode(name, functions):
    rep = bracket_check(IDS[name], "lattice", functions)
    assert rep.passed, rep.line()
    assert rep.checked > 0


def test_uncorrected_delta_y_bracket_fails(functions):
    rep = bracket_check(IDS["[delta_y,Z] = i(1 + delta_y + delta_y^2)"], "lattice", functions)
    assert not rep.passed


@pytest.mark.parametrize("name", ["[delta_x,Z] = 1 + delta_x",
                                  "[delta_y,Z] = i(1 + delta_y + delta_y^2/2)",
                                  "[delta_x,delta_y] = 0"])
def test_identities_hold_in_matrix_mode(name):
    assert bracket_check(IDS[name], "matrix", N=16).passed


def test_uncorrected_delta_y_bracket_fails_in_matrix_mode():
    assert not bracket_check(IDS["[delta_y,Z] = i(1 + delta_y + delta_y^2)"], "matrix", N=12).passed


def test_dbar_has_no_matrix_mode():
    with pytest.raises(ValueError):
        bracket_check(IDS["[dbar,delta_x] = 0"], "matrix")


def test_run_identities_matches_expectations(functions):
    reps = run_identities(functions)
    assert [r.passed for r in reps] == [i.expected for i in IDENTITIES]
    assert reps[1].line().startswith("FAIL")


def test_delta_y_series_on_small_degrees(wide_table):
    for n in range(3):
        f = wide_table.lattice(n)
        d = delta_y(f)
        s = deltay_series(f)
        w = d.window.intersect(s.window)
        assert d.restrict(w) == s.restrict(w)
    # delta_y zeta_2 = 2i z - 1 - i
    assert delta_y(wide_table.lattice(2))(3, 0) == gr(-1, -1) + gr(0, 6)


def test_delta_y_check(wide_table):
    rep = deltay_check(15, wide_table)
    assert rep.corrected_passed and rep.uncorrected_fails_on_zeta1 and not rep.failures


def test_delta_y_check_needs_wide_window(small_table):
    with pytest.raises(ValueError):
        deltay_check(12, small_table)


def test_series_ratio_norm():
    assert deltay_series_norm(20) == pytest.approx(1 / math.sqrt(2))


def test_commutator_with_real_part():
    rep = commutator_A_check(16)
    assert rep.corrected_passed
    assert not rep.uncorrected_passed
    assert rep.uncorrected_mismatches[0] == (0, 1)


def test_commutator_entry_00():
    dx, A = matrix_of("delta_x", 10), matrix_of("A_reZ", 10)
    lhs = dx @ A - A @ dx
    assert lhs[0, 0] == GaussianRational(1, 0) / 2


def test_shift_relations():
    assert shift_relations(12) == {"dx_dx_adj_is_identity": True,
                                   "dx_adj_dx_is_identity_minus_p0": True}


def test_shift_relation_fails_at_edge():
    dx = matrix_of("delta_x", 6)
    assert (dx @ dx.adjoint()).mismatches(OperatorMatrix.identity(6), 0) == [(5, 5)]


def test_kernel_examples(small_table):
    assert kernel_eval((1, 0), (1, 0), small_table).value == 2
    assert kernel_eval((2, 0), (1, 0), small_table).value == 3
    assert kernel_eval((0, 0), (3, -2), small_table).value == 1
    assert kernel_eval((2, 0), (1, 0), small_table).exact


def test_kernel_gram_psd(small_table):
    pts = [(0, 0), (1, 1), (2, -1), (3, 2), (5, 0), (4, -3)]
    g = kernel_gram(pts, small_table)
    assert g.is_hermitian()
    assert g.min_eigenvalue >= -1e-10
    one = kernel_gram([(2, 2)], small_table)
    assert one.gram.shape == (1, 1) and one.gram[0, 0].real >= 0


def test_fock_dominance():
    assert fock_dominance([0j], 30).gram[0, 0] == 0
    rng = np.random.default_rng(0)
    z = rng.uniform(-0.7, 0.7, 5) + 1j * rng.uniform(-0.7, 0.7, 5)
    assert fock_dominance(z, 30).min_eigenvalue >= -1e-10


def test_csv_outputs():
    lines = matrix_of("Z", 2).to_csv().splitlines()
    assert lines == ["i,j,re,im", "0,0,0.0,0.0", "0,1,0.0,0.0", "1,0,1.0,0.0", "1,1,1.0,0.0"]
