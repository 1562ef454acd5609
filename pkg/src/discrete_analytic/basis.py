"""Factorial polynomials and the discrete Fourier transform on Z_+ and Z_+^2.

The transform of ``f`` on ``{0, 1, ...}`` is the coefficient sequence of ``f`` in
the falling-factorial basis ``x^[n] = x (x-1) ... (x-n+1)``:

    f_hat(n) = (delta^n f)(0) / n!

All routines here are exact when fed :class:`GaussianRational` data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Sequence, Tuple

from .gaussian import GaussianRational, ZERO, as_gr
from .lattice import LatticeFunction, Window, WindowError
from .polynomial import ExactPolynomial1, ExactPolynomial2

__all__ = [
    "BASIS_TAGS",
    "CoefficientSeries",
    "CoefficientSeries2",
    "CompatibilityError",
    "falling",
    "factorial_poly",
    "forward_differences",
    "fourier_1d",
    "inverse_fourier_1d",
    "fourier_2d",
    "inverse_fourier_2d",
    "antidifference_1d",
    "joint_primitive",
]

BASIS_TAGS = ("factorial_x", "zeta", "monomial")


class CompatibilityError(ValueError):
    """Raised when the data handed to :func:`joint_primitive` admit no primitive."""


def falling(x: int, n: int) -> int:
    """Integer value of ``x^[n]``; valid for negative ``x`` as well."""
    out = 1
    for j in range(n):
        out *= x - j
    return out


@lru_cache(maxsize=None)
def _factorial_poly_ints(n: int) -> Tuple[int, ...]:
    # signed Stirling numbers of the first kind
    coeffs = [1]
    for j in range(n):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= j * c
        coeffs = nxt
    return tuple(coeffs)


def factorial_poly(n: int) -> ExactPolynomial1:
    """``x^[n]`` in the monomial basis; ``x^[0] = 1``."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return ExactPolynomial1(_factorial_poly_ints(n))


def _zero_like(v):
    return ZERO if isinstance(v, GaussianRational) else 0


@dataclass(frozen=True)
class CoefficientSeries:
    """Coefficients ``c[n]`` in one of the bases named by ``basis``.

    Coefficients may be exact (:class:`GaussianRational`) or complex floats.
    Trailing zeros are trimmed on construction.
    """

    coeffs: Tuple = ()
    basis: str = "factorial_x"

    def __post_init__(self):
        if self.basis not in BASIS_TAGS:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        coeffs = [c if isinstance(c, (GaussianRational, complex, float)) else as_gr(c)
                  for c in self.coeffs]
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:n]))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n: int):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ZERO

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"basis": self.basis, "coeffs": [_coeff_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: Mapping) -> CoefficientSeries:
        return cls(tuple(_coeff_parse(c) for c in obj["coeffs"]), obj.get("basis", "factorial_x"))


def _coeff_str(c):
    if isinstance(c, GaussianRational):
        return str(c)
    c = complex(c)
    return [c.real, c.imag]


def _coeff_parse(c):
    if isinstance(c, list):
        return complex(c[0], c[1])
    return GaussianRational.from_json(c)


class CoefficientSeries2:
    """Sparse bivariate coefficients ``{(m, n): c}`` in the basis ``x^[m] y^[n]``."""

    __slots__ = ("coeffs", "_intform")

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] | None = None):
        out = {}
        for k, c in (coeffs or {}).items():
            c = as_gr(c)
            if c:
                out[(int(k[0]), int(k[1]))] = c
        self.coeffs: Dict[Tuple[int, int], GaussianRational] = out
        self._intform = None

    def __getitem__(self, key) -> GaussianRational:
        return self.coeffs.get(key, ZERO)

    def __eq__(self, other):
        if isinstance(other, CoefficientSeries2):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        items = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"CoefficientSeries2({{{items}}})"

    def __add__(self, other: CoefficientSeries2) -> CoefficientSeries2:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return CoefficientSeries2(out)

    def __sub__(self, other: CoefficientSeries2) -> CoefficientSeries2:
        return self + other.scale(-1)

    def scale(self, c) -> CoefficientSeries2:
        c = as_gr(c)
        return CoefficientSeries2({k: v * c for k, v in self.coeffs.items()})

    @property
    def degree(self) -> int:
        return max((m + n for m, n in self.coeffs), default=-1)

    def delta_x(self) -> CoefficientSeries2:
        """Coefficients of ``delta_x`` applied to the represented function."""
        return CoefficientSeries2({(m - 1, n): c * m for (m, n), c in self.coeffs.items() if m})

    def delta_y(self) -> CoefficientSeries2:
        return CoefficientSeries2({(m, n - 1): c * n for (m, n), c in self.coeffs.items() if n})

    def restrict_x_axis(self) -> CoefficientSeries:
        deg = max((m for m, n in self.coeffs if n == 0), default=-1)
        return CoefficientSeries(tuple(self[(m, 0)] for m in range(deg + 1)))

    def _ints(self):
        if self._intform is None:
            den = 1
            for c in self.coeffs.values():
                den = math.lcm(den, c.re.denominator, c.im.denominator)
            rows: Dict[int, list] = {}
            for (m, n), c in self.coeffs.items():
                a = c.re.numerator * (den // c.re.denominator)
                b = c.im.numerator * (den // c.im.denominator)
                rows.setdefault(m, []).append((n, a, b))
            self._intform = (den, rows)
        return self._intform

    def __call__(self, x: int, y: int) -> GaussianRational:
        """Exact value at an integer point (any sign)."""
        den, rows = self._ints()
        re_acc = 0
        im_acc = 0
        fy_cache: Dict[int, int] = {}
        for m, terms in rows.items():
            fx = falling(x, m)
            if not fx:
                continue
            ra = ia = 0
            for n, a, b in terms:
                fy = fy_cache.get(n)
                if fy is None:
                    fy = fy_cache[n] = falling(y, n)
                ra += a * fy
                ia += b * fy
            re_acc += fx * ra
            im_acc += fx * ia
        return GaussianRational._make(Fraction(re_acc, den), Fraction(im_acc, den))

    def on_window(self, window: Window) -> LatticeFunction:
        return LatticeFunction.from_callable(self, window)

    def to_polynomial(self) -> ExactPolynomial2:
        """Convert to the monomial basis ``x**m y**n``."""
        out: Dict[Tuple[int, int], GaussianRational] = {}
        for (m, n), c in self.coeffs.items():
            px = _factorial_poly_ints(m)
            py = _factorial_poly_ints(n)
            for a, sa in enumerate(px):
                if not sa:
                    continue
                for b, sb in enumerate(py):
                    if sb:
                        out[(a, b)] = out.get((a, b), ZERO) + c * (sa * sb)
        return ExactPolynomial2(out)

    @classmethod
    def from_polynomial(cls, p: ExactPolynomial2) -> CoefficientSeries2:
        """Factorial-basis coefficients of a bivariate polynomial via :func:`fourier_2d`."""
        d = max(p.degree, 0)
        f = LatticeFunction.from_callable(lambda x, y: p(x, y), Window(0, d, 0, d))
        return fourier_2d(f)

    def to_json(self) -> dict:
        return {"basis": "factorial_xy",
                "coeffs": [[m, n, str(c)] for (m, n), c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, obj: Mapping) -> CoefficientSeries2:
        return cls({(m, n): GaussianRational.from_json(c) for m, n, c in obj["coeffs"]})


def forward_differences(values: Sequence) -> list:
    """``[(delta^n f)(0) for n in range(len(values))]`` by iterated differences."""
    row = list(values)
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


def fourier_1d(values: Sequence) -> CoefficientSeries:
    """Factorial-basis transform of the samples ``f(0), ..., f(N)``."""
    vals = [v if isinstance(v, (complex, float)) else as_gr(v) for v in values]
    diffs = forward_differences(vals)
    coeffs = []
    fact = 1
    for n, d in enumerate(diffs):
        if n:
            fact *= n
        coeffs.append(d / fact)
    return CoefficientSeries(tuple(coeffs), "factorial_x")


def inverse_fourier_1d(c: CoefficientSeries | Sequence, x: int):
    """``sum_n c[n] x^[n]``; at most ``x + 1`` non-zero terms when ``x >= 0``."""
    coeffs = c.coeffs if isinstance(c, CoefficientSeries) else tuple(c)
    if x < 0:
        raise ValueError("the factorial series is evaluated on Z_+ only")
    acc = _zero_like(coeffs[0]) if coeffs else ZERO
    ff = 1
    for n, cn in enumerate(coeffs[: x + 1]):
        if n:
            ff *= x - n + 1
        acc = acc + cn * ff
    return acc


def fourier_2d(f: LatticeFunction) -> CoefficientSeries2:
    """Transform of ``f`` on a window anchored at the origin, first in y then in x."""
    w = f.window
    if w.x_min != 0 or w.y_min != 0:
        raise WindowError(f"fourier_2d needs a window anchored at (0, 0), got {w}")
    by_y = [fourier_1d([f(x, y) for y in range(w.height)]) for x in range(w.width)]
    out = {}
    for n in range(w.height):
        col = fourier_1d([by_y[x][n] for x in range(w.width)])
        for m, c in enumerate(col.coeffs):
            if c:
                out[(m, n)] = c
    return CoefficientSeries2(out)


def inverse_fourier_2d(c: CoefficientSeries2, window: Window) -> LatticeFunction:
    return c.on_window(window)


def antidifference_1d(f: CoefficientSeries) -> CoefficientSeries:
    """``g`` with ``delta g = f`` and ``g(0) = 0``, both in the factorial basis."""
    if f.basis != "factorial_x":
        raise ValueError("antidifference_1d works on factorial-basis series")
    if not f.coeffs:
        return CoefficientSeries((), "factorial_x")
    return CoefficientSeries((ZERO,) + tuple(c / (n + 1) for n, c in enumerate(f.coeffs)))


def joint_primitive(f: CoefficientSeries2, g: CoefficientSeries2) -> CoefficientSeries2:
    """Polynomial ``h`` with ``delta_x h = f`` and ``delta_y h = g`` (``h(0,0) = 0``).

    Requires ``(n+1) f(m, n+1) == (m+1) g(m+1, n)`` for all ``(m, n)``.
    """
    keys = {(m, n - 1) for (m, n) in f.coeffs if n > 0}
    keys |= {(m - 1, n) for (m, n) in g.coeffs if m > 0}
    for m, n in sorted(keys):
        if (n + 1) * f[(m, n + 1)] != (m + 1) * g[(m + 1, n)]:
            raise CompatibilityError(
                f"delta_y f != delta_x g: coefficient mismatch at (m, n) = {(m, n)}"
            )
    h = {(m + 1, n): c / (m + 1) for (m, n), c in f.coeffs.items()}
    for (m, n), c in g.coeffs.items():
        if m == 0:
            h[(0, n + 1)] = h.get((0, n + 1), ZERO) + c / (n + 1)
    return CoefficientSeries2(h)
