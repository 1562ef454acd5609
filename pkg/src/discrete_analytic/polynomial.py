"""Sparse exact polynomials in one and two variables over Q(i)."""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .gaussian import GaussianRational, ONE, ZERO, as_gr

__all__ = ["ExactPolynomial1", "ExactPolynomial2", "poly_eval2"]


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class ExactPolynomial1:
    """Univariate polynomial; ``coefficients[k]`` multiplies ``x**k``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        self.coefficients = _trim([as_gr(c) for c in coefficients])

    @classmethod
    def monomial(cls, k: int, c=1) -> ExactPolynomial1:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _poly1(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return ExactPolynomial1(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial1([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-_poly1(other))

    def __rsub__(self, other):
        return _poly1(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, GaussianRational)) or hasattr(other, "denominator"):
            c = as_gr(other)
            return ExactPolynomial1([a * c for a in self.coefficients])
        other = _poly1(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial1()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return ExactPolynomial1(out)

    __rmul__ = __mul__

    def shift(self, h: int = 1) -> ExactPolynomial1:
        """The polynomial ``x -> p(x + h)``."""
        out = ExactPolynomial1()
        step = ExactPolynomial1([h, 1])
        for c in reversed(self.coefficients):
            out = out * step + ExactPolynomial1([c])
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial1):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"ExactPolynomial1({[str(c) for c in self.coefficients]})"


def _poly1(p) -> ExactPolynomial1:
    if isinstance(p, ExactPolynomial1):
        return p
    return ExactPolynomial1([p])


class ExactPolynomial2:
    """Bivariate polynomial stored sparsely as ``{(m, n): coeff of x**m y**n}``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[Tuple[int, int], object] | None = None):
        coefficients = coefficients or {}
        cleaned: Dict[Tuple[int, int], GaussianRational] = {}
        for (m, n), c in coefficients.items():
            if m < 0 or n < 0:
                raise ValueError("exponents must be non-negative")
            c = as_gr(c)
            if c:
                cleaned[(int(m), int(n))] = c
        self.coefficients = cleaned

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> ExactPolynomial2:
        """Build from ``rows[m][n]`` = coefficient of ``x**m y**n``."""
        return cls({(m, n): c for m, row in enumerate(rows) for n, c in enumerate(row)})

    @classmethod
    def from_poly1(cls, p: ExactPolynomial1) -> ExactPolynomial2:
        return cls({(k, 0): c for k, c in enumerate(p.coefficients)})

    @classmethod
    def variable_z(cls) -> ExactPolynomial2:
        """``z = x + i y``."""
        return cls({(1, 0): 1, (0, 1): GaussianRational(0, 1)})

    def to_dense(self) -> list:
        if not self.coefficients:
            return []
        mx = max(m for m, _ in self.coefficients)
        my = max(n for _, n in self.coefficients)
        rows = [[ZERO] * (my + 1) for _ in range(mx + 1)]
        for (m, n), c in self.coefficients.items():
            rows[m][n] = c
        return rows

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m + n for m, n in self.coefficients), default=-1)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x, y) -> GaussianRational:
        acc = ZERO
        xp: Dict[int, object] = {}
        yp: Dict[int, object] = {}
        for (m, n), c in self.coefficients.items():
            if m not in xp:
                xp[m] = as_gr(x) ** m
            if n not in yp:
                yp[n] = as_gr(y) ** n
            acc = acc + c * xp[m] * yp[n]
        return acc

    def restrict_x_axis(self) -> ExactPolynomial1:
        """The polynomial ``x -> p(x, 0)``."""
        deg = max((m for m, n in self.coefficients if n == 0), default=-1)
        out = [ZERO] * (deg + 1)
        for (m, n), c in self.coefficients.items():
            if n == 0:
                out[m] = c
        return ExactPolynomial1(out)

    def __add__(self, other):
        other = _poly2(other)
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = out.get(k, ZERO) + c
        return ExactPolynomial2(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial2({k: -c for k, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-_poly2(other))

    def __rsub__(self, other):
        return _poly2(other) - self

    def __mul__(self, other):
        if not isinstance(other, (ExactPolynomial2, ExactPolynomial1)):
            c = as_gr(other)
            return ExactPolynomial2({k: v * c for k, v in self.coefficients.items()})
        other = _poly2(other)
        out: Dict[Tuple[int, int], GaussianRational] = {}
        for (m1, n1), a in self.coefficients.items():
            for (m2, n2), b in other.coefficients.items():
                key = (m1 + m2, n1 + n2)
                out[key] = out.get(key, ZERO) + a * b
        return ExactPolynomial2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPolynomial2({(0, 0): ONE})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial2):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __repr__(self):
        items = ", ".join(f"{k}: {v}" for k, v in sorted(self.coefficients.items()))
        return f"ExactPolynomial2({{{items}}})"


def _poly2(p) -> ExactPolynomial2:
    if isinstance(p, ExactPolynomial2):
        return p
    if isinstance(p, ExactPolynomial1):
        return ExactPolynomial2.from_poly1(p)
    return ExactPolynomial2({(0, 0): p})


def poly_eval2(p: ExactPolynomial2, x: int, y: int) -> GaussianRational:
    return p(x, y)
