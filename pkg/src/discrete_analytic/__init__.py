"""Exact computation with discrete analytic functions on the integer lattice."""

from .basis import (
    CoefficientSeries,
    CoefficientSeries2,
    CompatibilityError,
    antidifference_1d,
    factorial_poly,
    fourier_1d,
    fourier_2d,
    inverse_fourier_1d,
    inverse_fourier_2d,
    joint_primitive,
)
from .gaussian import GaussianRational, gr_arith
from .lattice import (
    LatticeFunction,
    Window,
    WindowError,
    dbar,
    delta_x,
    delta_y,
    is_discrete_analytic,
)
from .polynomial import ExactPolynomial1, ExactPolynomial2, poly_eval2
from .products import (
    ExpandableFunction,
    PreconditionError,
    boxdot_product,
    ck_product,
    ck_quotient,
    ck_structure_constants,
    eval_expandable,
    expandability_estimate,
    z_operator,
)
from .realization import (
    Realization,
    SpectrumError,
    eval_realization,
    fourier_decay_check,
    rational_da_extend,
    realize_from_poles,
)
from .zeta import (
    ZetaTable,
    extend_polynomial,
    exy_taylor,
    growth_rate,
    zeta_by_extension,
    zeta_by_taylor,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSeries",
    "CoefficientSeries2",
    "CompatibilityError",
    "ExactPolynomial1",
    "ExactPolynomial2",
    "ExpandableFunction",
    "GaussianRational",
    "LatticeFunction",
    "PreconditionError",
    "Realization",
    "SpectrumError",
    "Window",
    "WindowError",
    "ZetaTable",
    "antidifference_1d",
    "boxdot_product",
    "ck_product",
    "ck_quotient",
    "ck_structure_constants",
    "dbar",
    "delta_x",
    "delta_y",
    "eval_expandable",
    "eval_realization",
    "expandability_estimate",
    "extend_polynomial",
    "exy_taylor",
    "factorial_poly",
    "fourier_1d",
    "fourier_2d",
    "fourier_decay_check",
    "gr_arith",
    "growth_rate",
    "inverse_fourier_1d",
    "inverse_fourier_2d",
    "is_discrete_analytic",
    "joint_primitive",
    "poly_eval2",
    "rational_da_extend",
    "realize_from_poles",
    "z_operator",
    "zeta_by_extension",
    "zeta_by_taylor",
]
