"""Expandable functions and the products defined on them.

An expandable function is stored by its zeta-coefficients ``f0_hat(n)``, the
factorial-basis transform of its restriction ``f0(x) = f(x, 0)``.  Products are
computed in restriction space:

* Cauchy-Kovalevskaya product: transform of the pointwise product of restrictions;
* boxdot product: ``zeta_m [.] zeta_n = m! n! / (m+n)! zeta_{m+n}``.

Expandability itself is a limsup condition on the coefficients and cannot be
decided from finitely many of them.  :func:`expandability_estimate` is a
numerical proxy only; nothing here certifies expandability from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .basis import CoefficientSeries, factorial_poly, falling, fourier_1d, inverse_fourier_1d
from .gaussian import GaussianRational, I, ZERO, as_gr
from .lattice import LatticeFunction, WindowError
from .polynomial import ExactPolynomial1, ExactPolynomial2
from .zeta import ZetaTable

__all__ = [
    "ExpandableFunction",
    "GrowthCertificate",
    "PreconditionError",
    "eval_expandable",
    "z_operator",
    "z_on_coefficients",
    "ck_product",
    "ck_product_z_form",
    "ck_structure_constants",
    "ck_quotient",
    "ck_quotient_triangular",
    "boxdot_product",
    "expandability_estimate",
    "nonnegative_integer_roots",
    "restriction_polynomial",
]


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


@dataclass(frozen=True)
class GrowthCertificate:
    bound: float
    checked_up_to: int


@dataclass(frozen=True)
class ExpandableFunction:
    """``f(x, y) = sum_n coeffs[n] zeta_n(x, y)``.

    ``order is None`` means the coefficient sequence has finite support and is
    complete (a discrete analytic polynomial).  Otherwise ``coeffs[0..order]``
    are exact and the tail is unknown.  ``restriction`` optionally gives exact
    access to ``f(x, 0)`` for every ``x``, which lets the series be recomputed
    to any order.
    """

    coeffs: CoefficientSeries
    order: Optional[int] = None
    restriction: Optional[Callable[[int], object]] = field(default=None, compare=False)
    growth_certificate: Optional[GrowthCertificate] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.coeffs, CoefficientSeries):
            object.__setattr__(self, "coeffs", CoefficientSeries(tuple(self.coeffs), "zeta"))
        elif self.coeffs.basis != "zeta":
            object.__setattr__(self, "coeffs", CoefficientSeries(self.coeffs.coeffs, "zeta"))
        if self.order is not None and len(self.coeffs) > self.order + 1:
            object.__setattr__(
                self, "coeffs", CoefficientSeries(self.coeffs.coeffs[: self.order + 1], "zeta")
            )

    # constructors

    @classmethod
    def zeta(cls, n: int, c=1) -> ExpandableFunction:
        return cls(CoefficientSeries((0,) * n + (c,), "zeta"))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, order: Optional[int] = None):
        return cls(CoefficientSeries(tuple(coeffs), "zeta"), order)

    @classmethod
    def from_restriction(cls, f0: Callable[[int], object], order: int) -> ExpandableFunction:
        """Truncated series of the expandable extension of ``f0`` (exact through ``order``)."""
        coeffs = fourier_1d([f0(x) for x in range(order + 1)])
        return cls(CoefficientSeries(coeffs.coeffs, "zeta"), order, restriction=f0)

    @classmethod
    def from_polynomial(cls, p: ExactPolynomial1 | ExactPolynomial2) -> ExpandableFunction:
        """Expandable function with restriction ``p(x)`` (or ``p(x, 0)``)."""
        if isinstance(p, ExactPolynomial2):
            p = p.restrict_x_axis()
        d = max(p.degree, 0)
        coeffs = fourier_1d([p(x) for x in range(d + 1)])
        return cls(CoefficientSeries(coeffs.coeffs, "zeta"))

    # queries

    @property
    def is_polynomial(self) -> bool:
        return self.order is None

    @property
    def known_order(self) -> float:
        """Highest coefficient index known exactly (``inf`` for polynomials)."""
        return math.inf if self.order is None else self.order

    def __getitem__(self, n: int):
        if self.order is not None and n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def restrict(self, x: int):
        """``f(x, 0)``; exact whenever ``x <= order`` or ``restriction`` is known."""
        if self.order is not None and x > self.order:
            if self.restriction is None:
                raise PreconditionError(f"f({x}, 0) needs coefficients beyond order {self.order}")
            return as_gr(self.restriction(x))
        return inverse_fourier_1d(self.coeffs, x)

    def with_order(self, N: int) -> ExpandableFunction:
        """Re-expand to order ``N`` (needs a known restriction unless ``N <= order``)."""
        if self.order is None:
            return self
        if N <= self.order:
            return replace(self, coeffs=CoefficientSeries(self.coeffs.coeffs[: N + 1], "zeta"),
                           order=N)
        if self.restriction is None:
            raise PreconditionError(f"cannot extend a series truncated at {self.order} to {N}")
        return ExpandableFunction.from_restriction(self.restriction, N)

    def to_json(self) -> dict:
        out = self.coeffs.to_json()
        if self.order is not None:
            out["order"] = self.order
        return out

    @classmethod
    def from_json(cls, obj) -> ExpandableFunction:
        series = CoefficientSeries.from_json({**obj, "basis": "zeta"})
        return cls(series, obj.get("order"))


def eval_expandable(f: ExpandableFunction, zt: ZetaTable, x: int, y: int,
                    with_bound: bool = False):
    """``sum_n f0_hat(n) zeta_n(x, y)`` using tabulated ``zeta_n``.

    For polynomials the sum is exact.  For truncated series the partial sum is
    returned; ``with_bound=True`` additionally returns a float estimate of the
    omitted tail (0.0 when the partial sum is already exact).
    """
    if f.order is None:
        if f.coeffs.degree > zt.max_degree:
            raise PreconditionError(
                f"table degree {zt.max_degree} < series degree {f.coeffs.degree}")
        top = f.coeffs.degree
    else:
        top = min(f.order, zt.max_degree)
    if (x, y) not in zt.window:
        raise WindowError(f"point {(x, y)} outside table window {zt.window}")
    acc = ZERO if f.coeffs.is_exact else 0j
    terms = []
    for n in range(top + 1):
        c = f.coeffs[n]
        if c:
            z = zt(n, x, y)
            t = c * z if isinstance(c, GaussianRational) else c * complex(z)
            acc = acc + t
            terms.append((n, abs(t)))
    if not with_bound:
        return acc
    exact = f.order is None or (y == 0 and 0 <= x <= top)
    return acc, (0.0 if exact else _tail_estimate(terms, top))


def _tail_estimate(terms: List[Tuple[int, float]], top: int) -> float:
    tail = [(n, t) for n, t in terms if n >= top // 2 and t > 0]
    if len(tail) < 2:
        return math.inf
    (n0, t0), (n1, t1) = tail[0], tail[-1]
    if n1 == n0:
        return math.inf
    ratio = (t1 / t0) ** (1.0 / (n1 - n0))
    if ratio >= 1:
        return math.inf
    return t1 * ratio / (1 - ratio)


# -- the multiplication operator -------------------------------------------------

def z_operator(f: LatticeFunction) -> LatticeFunction:
    """``x f(x, y) + i y (f(x, y+1) + f(x, y-1)) / 2``; drops the top and bottom rows."""
    w = f.window
    if w.height < 3:
        raise WindowError(f"z_operator needs a window at least 3 rows tall, got {w}")
    out_w = w.shrink(bottom=1, top=1)
    v = f.values
    xs = np.arange(w.x_min, w.x_max + 1, dtype=object)[:, None]
    ys = np.arange(out_w.y_min, out_w.y_max + 1, dtype=object)[None, :]
    half_i = I / 2
    vals = xs * v[:, 1:-1] + half_i * ys * (v[:, 2:] + v[:, :-2])
    return LatticeFunction(out_w, vals)


def z_on_coefficients(f: ExpandableFunction) -> ExpandableFunction:
    """Coefficients of ``Z f``: ``n f0_hat(n) + f0_hat(n-1)``."""
    c = f.coeffs
    # a polynomial gains one degree; a truncated series keeps its order
    top = len(c) if f.order is None else f.order
    out = [c[n] * n + (c[n - 1] if n else ZERO) for n in range(top + 1)]
    return ExpandableFunction(CoefficientSeries(tuple(out), "zeta"), f.order)


def restriction_polynomial(f: ExpandableFunction) -> ExactPolynomial1:
    """``f(x, 0)`` in the monomial basis (polynomials only)."""
    if not f.is_polynomial:
        raise PreconditionError("restriction of a truncated series is not a polynomial")
    out = ExactPolynomial1()
    for n, c in enumerate(f.coeffs.coeffs):
        out = out + factorial_poly(n) * c
    return out


# -- Cauchy-Kovalevskaya product -----------------------------------------------

def _product_order(f: ExpandableFunction, g: ExpandableFunction, degree: Optional[int]):
    if f.is_polynomial and g.is_polynomial:
        return None if degree is None else degree
    if degree is None:
        if f.is_polynomial or g.is_polynomial:
            return int(min(f.known_order, g.known_order))
        raise PreconditionError(
            "neither factor is a polynomial; pass an explicit truncation degree")
    return degree


def ck_product(f: ExpandableFunction, g: ExpandableFunction,
               degree: Optional[int] = None) -> ExpandableFunction:
    """The expandable function whose restriction is ``f(x, 0) g(x, 0)``.

    For two polynomials the result is exact and complete.  Otherwise the result
    is truncated at ``degree`` (default: the order of the non-polynomial factor).
    """
    order = _product_order(f, g, degree)
    if order is None:
        top = max(f.coeffs.degree, 0) + max(g.coeffs.degree, 0)
        vals = [f.restrict(x) * g.restrict(x) for x in range(top + 1)]
        return ExpandableFunction(CoefficientSeries(fourier_1d(vals).coeffs, "zeta"))
    f = f.with_order(order)
    g = g.with_order(order)
    vals = [f.restrict(x) * g.restrict(x) for x in range(order + 1)]
    restriction = None
    if (f.is_polynomial or f.restriction) and (g.is_polynomial or g.restriction):
        restriction = lambda x, f=f, g=g: _restrict_any(f, x) * _restrict_any(g, x)
    return ExpandableFunction(CoefficientSeries(fourier_1d(vals).coeffs, "zeta"), order,
                              restriction=restriction)


def _restrict_any(f: ExpandableFunction, x: int):
    if f.is_polynomial or f.restriction is None:
        return f.restrict(x)
    return as_gr(f.restriction(x))


def ck_product_z_form(f: ExpandableFunction, g: ExpandableFunction) -> ExpandableFunction:
    """``c_0 g + c_1 Z g + ... + c_d Z^d g`` where ``f(x, 0) = sum c_k x^k``."""
    if not f.is_polynomial:
        raise PreconditionError("the Z-polynomial form needs a polynomial left factor")
    mono = restriction_polynomial(f)
    d = max(mono.degree, 0)
    acc: Optional[ExpandableFunction] = None
    power = g
    for k in range(d + 1):
        ck = mono.coefficients[k] if k < len(mono.coefficients) else ZERO
        if ck:
            term = ExpandableFunction(
                CoefficientSeries(tuple(c * ck for c in power.coeffs.coeffs), "zeta"), power.order)
            acc = term if acc is None else _add(acc, term)
        power = z_on_coefficients(power)
    return acc if acc is not None else ExpandableFunction(CoefficientSeries((), "zeta"), g.order)


def _add(a: ExpandableFunction, b: ExpandableFunction) -> ExpandableFunction:
    order = None if a.order is None and b.order is None else int(min(a.known_order, b.known_order))
    n = max(len(a.coeffs), len(b.coeffs)) if order is None else order + 1
    return ExpandableFunction(
        CoefficientSeries(tuple(a.coeffs[k] + b.coeffs[k] for k in range(n)), "zeta"), order)


@lru_cache(maxsize=None)
def ck_structure_constants(m: int, n: int) -> Tuple[GaussianRational, ...]:
    """``c_j = delta^j(x^[m] x^[n])(0) / j!`` for ``j = 0..m+n``."""
    vals = [falling(x, m) * falling(x, n) for x in range(m + n + 1)]
    c = fourier_1d(vals).coeffs
    return tuple(c) + (ZERO,) * (m + n + 1 - len(c))


# -- quotients --------------------------------------------------------------------

def nonnegative_integer_roots(p: ExactPolynomial1) -> List[int]:
    """All roots of ``p`` in Z_+, found exactly below the Cauchy root bound."""
    if p.is_zero():
        raise PreconditionError("the zero polynomial vanishes everywhere")
    coeffs = p.coefficients
    lead = coeffs[-1].norm()
    ratio = max((c.norm() / lead for c in coeffs[:-1]), default=Fraction(0))
    # |root| <= 1 + max |a_k / a_d|
    bound = 1 + math.isqrt(math.ceil(ratio)) + 1
    return [x for x in range(bound + 1) if p(x) == 0]


def ck_quotient(p: ExpandableFunction, q: ExpandableFunction, N: int) -> ExpandableFunction:
    """The unique expandable ``f`` with ``q [.] f = p``, truncated at order ``N``.

    Computed in restriction space: ``f(x, 0) = p(x, 0) / q(x, 0)`` then transformed.
    """
    if not (p.is_polynomial and q.is_polynomial):
        raise PreconditionError("ck_quotient takes two discrete analytic polynomials")
    q0 = restriction_polynomial(q)
    p0 = restriction_polynomial(p)
    roots = nonnegative_integer_roots(q0)
    if roots:
        raise PreconditionError(f"denominator vanishes on Z_+ at x = {roots[0]}")
    if p == q:
        return ExpandableFunction.zeta(0)

    def f0(x):
        return p0(x) / q0(x)

    return ExpandableFunction.from_restriction(f0, N)


def ck_quotient_triangular(p: ExpandableFunction, q: ExpandableFunction,
                           N: int) -> ExpandableFunction:
    """Second route: solve ``sum_{m,k} q(m) f(k) c_j^{m,k} = p(j)`` for ``j <= N``.

    The system is lower triangular with diagonal ``q(j, 0)``.
    """
    if not (p.is_polynomial and q.is_polynomial):
        raise PreconditionError("ck_quotient_triangular takes two polynomials")
    qc = q.coeffs.coeffs
    f: List[GaussianRational] = []
    for j in range(N + 1):
        acc = p.coeffs[j]
        diag = ZERO
        for m, qm in enumerate(qc):
            if not qm:
                continue
            for k in range(max(0, j - m), j + 1):
                c = ck_structure_constants(m, k)
                cj = c[j] if j < len(c) else ZERO
                if not cj:
                    continue
                if k == j:
                    diag = diag + qm * cj
                else:
                    acc = acc - qm * f[k] * cj
        if not diag:
            raise PreconditionError(f"denominator vanishes on Z_+ at x = {j}")
        f.append(acc / diag)
    return ExpandableFunction(CoefficientSeries(tuple(f), "zeta"), N)


# -- boxdot product ---------------------------------------------------------------

def boxdot_product(f: ExpandableFunction, g: ExpandableFunction) -> ExpandableFunction:
    """``h(k) = sum_{m+n=k} f(m) g(n) m! n! / k!``."""
    if f.is_polynomial and g.is_polynomial:
        top = max(f.coeffs.degree, 0) + max(g.coeffs.degree, 0)
        order = None
    else:
        order = top = int(min(f.known_order, g.known_order))
    out = []
    for k in range(top + 1):
        acc = ZERO
        for m in range(k + 1):
            a, b = f.coeffs[m], g.coeffs[k - m]
            if a and b:
                acc = acc + a * b * Fraction(math.factorial(m) * math.factorial(k - m),
                                             math.factorial(k))
        out.append(acc)
    return ExpandableFunction(CoefficientSeries(tuple(out), "zeta"), order)


# -- growth proxy ------------------------------------------------------------------

def expandability_estimate(series: CoefficientSeries | ExpandableFunction | Sequence,
                           N: int) -> float:
    """``max over N/2 <= n <= N`` of ``(|c(n)| n!)^(1/n)``; advisory only.

    Values below ``sqrt(2)`` are consistent with expandability, values below 1
    with a rational restriction.  Zero coefficients are skipped, so a polynomial
    of degree below ``N/2`` gives 0.
    """
    if isinstance(series, ExpandableFunction):
        series = series.coeffs
    coeffs = series.coeffs if isinstance(series, CoefficientSeries) else tuple(series)
    best = 0.0
    for n in range(max(N // 2, 1), N + 1):
        if n >= len(coeffs) or not coeffs[n]:
            continue
        c = coeffs[n]
        if isinstance(c, GaussianRational):
            log_abs = c.log_abs()
        else:
            log_abs = math.log(abs(c))
        best = max(best, math.exp((log_abs + math.lgamma(n + 1)) / n))
    return best
