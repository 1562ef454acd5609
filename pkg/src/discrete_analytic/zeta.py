"""The discrete analytic polynomials zeta_n and their generating function.

``zeta_n`` is the unique discrete analytic polynomial with ``zeta_n(x, 0) = x^[n]``.
Two constructions are provided and must agree exactly:

* :func:`zeta_by_extension` runs the inductive polynomial extension
  (:func:`extend_polynomial`) on ``x^[n]``;
* :func:`zeta_by_taylor` reads ``n! * [t^n] e_{x,y}(t)`` off the exact Taylor series
  of ``e_{x,y}(t) = (1+t)^x ((1+i+it)/(1+i+t))^y``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .basis import CoefficientSeries, CoefficientSeries2, fourier_1d, joint_primitive
from .gaussian import GaussianRational, I, ONE, ZERO
from .lattice import LatticeFunction, Window
from .polynomial import ExactPolynomial1, ExactPolynomial2

__all__ = [
    "ZetaTable",
    "extend_polynomial",
    "extend_factorial",
    "zeta_coefficients",
    "zeta_by_extension",
    "zeta_by_taylor",
    "exy_taylor",
    "growth_rate",
    "series_mul",
    "series_inv",
    "series_pow",
]

HALF_ONE_MINUS_I = GaussianRational(1, -1) / 2
ONE_PLUS_I = GaussianRational(1, 1)


# -- polynomial extension ----------------------------------------------------

def extend_factorial(c: CoefficientSeries) -> CoefficientSeries2:
    """Discrete analytic extension of ``sum c[n] x^[n]`` (factorial coefficients in/out).

    Induction on the degree: extend ``delta p`` to ``f``, set
    ``g = i f - (1-i)/2 delta_y f``, take the joint primitive ``h`` of ``(f, g)``
    and re-anchor the constant so that ``h(0, 0) = p(0)``.
    """
    coeffs = c.coeffs
    if len(coeffs) <= 1:
        return CoefficientSeries2({(0, 0): coeffs[0]} if coeffs else {})
    dp = CoefficientSeries(tuple(coeffs[n + 1] * (n + 1) for n in range(len(coeffs) - 1)))
    f = extend_factorial(dp)
    g = f.scale(I) - f.delta_y().scale(HALF_ONE_MINUS_I)
    h = joint_primitive(f, g)
    return h + CoefficientSeries2({(0, 0): coeffs[0] - h(0, 0)})


def extend_polynomial(p: ExactPolynomial1) -> ExactPolynomial2:
    """The unique discrete analytic polynomial ``q`` with ``q(x, 0) = p(x)``."""
    d = max(p.degree, 0)
    c = fourier_1d([p(x) for x in range(d + 1)])
    return extend_factorial(c).to_polynomial()


@lru_cache(maxsize=None)
def zeta_coefficients(n: int) -> CoefficientSeries2:
    """Factorial-basis coefficients of ``zeta_n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return extend_factorial(CoefficientSeries((0,) * n + (1,)))


# -- tables --------------------------------------------------------------------

@dataclass
class ZetaTable:
    """Exact values ``zeta_n(x, y)`` for ``n <= max_degree`` on a window.

    ``polys`` holds factorial-basis coefficients when the table was built by
    extension; the Taylor route only produces values.
    """

    max_degree: int
    window: Window
    values: Dict[Tuple[int, int, int], GaussianRational]
    polys: Optional[List[CoefficientSeries2]] = None
    _monomial: Dict[int, ExactPolynomial2] = field(default_factory=dict, repr=False)

    def __call__(self, n: int, x: int, y: int) -> GaussianRational:
        try:
            return self.values[(n, x, y)]
        except KeyError:
            raise KeyError(f"zeta_{n}({x}, {y}) not in table "
                           f"(max_degree={self.max_degree}, window={self.window})") from None

    def lattice(self, n: int) -> LatticeFunction:
        return LatticeFunction.from_callable(lambda x, y: self(n, x, y), self.window)

    def polynomial(self, n: int) -> ExactPolynomial2:
        if self.polys is None:
            raise ValueError("table was built without polynomial coefficients")
        if n not in self._monomial:
            self._monomial[n] = self.polys[n].to_polynomial()
        return self._monomial[n]

    def rows(self):
        """``(n, x, y, value)`` in deterministic order."""
        for n in range(self.max_degree + 1):
            for x, y in self.window.points():
                yield n, x, y, self.values[(n, x, y)]


def _zeta_values(args):
    n, window = args
    poly = zeta_coefficients(n)
    return n, poly, {(x, y): poly(x, y) for x, y in window.points()}


def zeta_by_extension(N: int, window: Window, threads: int = 1) -> ZetaTable:
    """Table of ``zeta_n = extend(x^[n])`` for ``n = 0..N``."""
    jobs = [(n, window) for n in range(N + 1)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_zeta_values, jobs))
    else:
        results = [_zeta_values(j) for j in jobs]
    values = {}
    polys = []
    for n, poly, vals in sorted(results, key=lambda r: r[0]):
        polys.append(poly)
        for (x, y), v in vals.items():
            values[(n, x, y)] = v
    return ZetaTable(N, window, values, polys)


# -- exact truncated power series -----------------------------------------------

def series_mul(a: Sequence, b: Sequence, N: int) -> tuple:
    out = [ZERO] * (N + 1)
    for i, ai in enumerate(a[: N + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: N + 1 - i]):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return tuple(out)


def series_inv(a: Sequence, N: int) -> tuple:
    """Reciprocal of a series with invertible constant term."""
    a0 = a[0]
    inv0 = 1 / a0
    out = [inv0]
    for n in range(1, N + 1):
        acc = ZERO
        for k in range(1, min(n, len(a) - 1) + 1):
            acc = acc + a[k] * out[n - k]
        out.append(-acc * inv0)
    return tuple(out)


def series_pow(a: Sequence, k: int, N: int) -> tuple:
    if k < 0:
        a, k = series_inv(a, N), -k
    result = (ONE,) + (ZERO,) * N
    base = tuple(a[: N + 1]) + (ZERO,) * max(0, N + 1 - len(a))
    while k:
        if k & 1:
            result = series_mul(result, base, N)
        k >>= 1
        if k:
            base = series_mul(base, base, N)
    return result


def _geometric(ratio: GaussianRational, scale: GaussianRational, N: int) -> tuple:
    """Coefficients of ``scale / (1 - ratio t)``."""
    out = []
    term = scale
    for _ in range(N + 1):
        out.append(term)
        term = term * ratio
    return tuple(out)


@lru_cache(maxsize=256)
def _binomial_factor(x: int, N: int) -> tuple:
    if x >= 0:
        return tuple(GaussianRational(math.comb(x, n)) for n in range(N + 1))
    # (1+t)^-1 = sum (-t)^n
    inv = _geometric(GaussianRational(-1), ONE, N)
    return series_pow(inv, -x, N)


@lru_cache(maxsize=256)
def _mobius_factor(y: int, N: int) -> tuple:
    """Series of ``((1+i+it)/(1+i+t))^y``."""
    c = ONE_PLUS_I
    if y >= 0:
        num = (c, I)
        inv_den = _geometric(-1 / c, 1 / c, N)  # 1/(c+t)
    else:
        num = (c, ONE)
        inv_den = _geometric(-I / c, 1 / c, N)  # 1/(c+it)
    ratio = series_mul(num, inv_den, N)
    return series_pow(ratio, abs(y), N)


def exy_taylor(x: int, y: int, N: int) -> CoefficientSeries:
    """First ``N + 1`` Taylor coefficients of ``e_{x,y}(t)`` at ``t = 0``, exactly."""
    coeffs = series_mul(_binomial_factor(x, N), _mobius_factor(y, N), N)
    return CoefficientSeries(coeffs, "monomial")


def zeta_by_taylor(N: int, window: Window) -> ZetaTable:
    values = {}
    for x, y in window.points():
        coeffs = series_mul(_binomial_factor(x, N), _mobius_factor(y, N), N)
        fact = 1
        for n in range(N + 1):
            if n:
                fact *= n
            values[(n, x, y)] = coeffs[n] * fact
    return ZetaTable(N, window, values)


def growth_rate(x: int, y: int, N: int) -> float:
    """``max over N/2 <= n <= N`` of ``(|zeta_n(x, y)| / n!)^(1/n)``.

    A finite-data proxy for the limsup, which equals ``1/sqrt(2)`` whenever
    ``x >= 0`` and ``y != 0``.
    """
    if N < 20:
        raise ValueError("growth_rate needs N >= 20")
    if y == 0 and x >= 0:
        raise ValueError("for y == 0 and x >= 0 the series terminates; limsup is 0")
    coeffs = exy_taylor(x, y, N).coeffs
    best = 0.0
    for n in range(max(N // 2, 1), N + 1):
        if n < len(coeffs) and coeffs[n]:
            best = max(best, math.exp(coeffs[n].log_abs() / n))
    return best
