"""State-space realizations of rational functions on Z_+.

A realization ``(A, B, C, p)`` encodes ``f(x) = p(x) + C (xI - A)^{-1} B``.
Entries are exact Gaussian rationals when possible; complex floats are
accepted and switch evaluation to numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .basis import fourier_1d
from .gaussian import GaussianRational, ONE, ZERO, as_gr
from .polynomial import ExactPolynomial1
from .products import ExpandableFunction, PreconditionError, expandability_estimate
from .zeta import ZetaTable

__all__ = [
    "Realization",
    "SpectrumError",
    "eval_realization",
    "realize_from_poles",
    "fourier_decay_check",
    "rational_da_extend",
    "exact_solve",
    "exact_det",
]


class SpectrumError(PreconditionError):
    """``xI - A`` is singular at some nonnegative integer ``x``."""


def _is_exact(v) -> bool:
    return isinstance(v, (int, GaussianRational)) or hasattr(v, "denominator")


def exact_det(M: List[List[GaussianRational]]) -> GaussianRational:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(row) for row in M]
    n = len(a)
    det = ONE
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            if a[r][k]:
                m = a[r][k] * inv
                a[r] = [a[r][j] - m * a[k][j] for j in range(n)]
    return det


def exact_solve(M: List[List[GaussianRational]], b: Sequence[GaussianRational]) -> list:
    n = len(M)
    a = [list(M[i]) + [b[i]] for i in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for r in range(n):
            if r != k and a[r][k]:
                m = a[r][k]
                a[r] = [a[r][j] - m * a[k][j] for j in range(n + 1)]
    return [a[i][n] for i in range(n)]


@dataclass(frozen=True)
class Realization:
    A: tuple
    B: tuple
    C: tuple
    poly: ExactPolynomial1 = field(default_factory=ExactPolynomial1)
    exact: bool = True

    def __init__(self, A, B, C, poly=None):
        A = [list(row) for row in A]
        B, C = list(B), list(C)
        n = len(A)
        if any(len(row) != n for row in A) or len(B) != n or len(C) != n:
            raise ValueError(f"inconsistent realization shapes: A {n}x?, B {len(B)}, C {len(C)}")
        flat = [v for row in A for v in row] + B + C
        exact = all(_is_exact(v) for v in flat)
        conv = as_gr if exact else complex
        object.__setattr__(self, "A", tuple(tuple(conv(v) for v in row) for row in A))
        object.__setattr__(self, "B", tuple(conv(v) for v in B))
        object.__setattr__(self, "C", tuple(conv(v) for v in C))
        if poly is None:
            poly = ExactPolynomial1()
        elif not isinstance(poly, ExactPolynomial1):
            poly = ExactPolynomial1(poly)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "exact", exact)

    @property
    def dim(self) -> int:
        return len(self.A)

    def gershgorin_bound(self) -> float:
        """Every eigenvalue has modulus below this."""
        bound = 0.0
        for i, row in enumerate(self.A):
            bound = max(bound, sum(abs(complex(v)) for v in row))
        return bound

    def resolvent_matrix(self, x: int):
        n = self.dim
        return [[(x if i == j else 0) - self.A[i][j] for j in range(n)] for i in range(n)]

    def check_spectrum(self) -> None:
        """Raise :class:`SpectrumError` if some ``x`` in Z_+ is an eigenvalue of ``A``.

        ``det(xI - A)`` is evaluated for ``x`` up to the Gershgorin radius;
        beyond it ``xI - A`` is strictly diagonally dominant.
        """
        top = math.ceil(self.gershgorin_bound())
        for x in range(top + 1):
            M = self.resolvent_matrix(x)
            if self.exact:
                singular = exact_det(M) == 0
            else:
                m = np.array(M, dtype=complex)
                sv = np.linalg.svd(m, compute_uv=False)
                singular = sv[-1] <= 1e-12 * max(1.0, sv[0])
            if singular:
                raise SpectrumError(f"A has eigenvalue {x} in Z_+")

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if self.exact else [v.real, v.imag]
        return {
            "A": [[enc(v) for v in row] for row in self.A],
            "B": [enc(v) for v in self.B],
            "C": [enc(v) for v in self.C],
            "poly": [str(c) for c in self.poly.coefficients],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Realization:
        def dec(v):
            if isinstance(v, list):
                return complex(v[0], v[1])
            return GaussianRational.from_json(v)
        poly = ExactPolynomial1([GaussianRational.from_json(c) for c in obj.get("poly", [])])
        return cls([[dec(v) for v in row] for row in obj["A"]],
                   [dec(v) for v in obj["B"]], [dec(v) for v in obj["C"]], poly)


def eval_realization(r: Realization, x: int):
    """``p(x) + C (xI - A)^{-1} B``; exact for exact realizations."""
    base = r.poly(x)
    if r.dim == 0:
        return base
    M = r.resolvent_matrix(x)
    if r.exact:
        try:
            sol = exact_solve(M, r.B)
        except ZeroDivisionError:
            raise SpectrumError(f"xI - A is singular at x = {x}") from None
        acc = base
        for c, s in zip(r.C, sol):
            acc = acc + c * s
        return acc
    m = np.array(M, dtype=complex)
    try:
        sol = np.linalg.solve(m, np.array(r.B, dtype=complex))
    except np.linalg.LinAlgError:
        raise SpectrumError(f"xI - A is singular at x = {x}") from None
    return complex(base) + complex(np.dot(np.array(r.C, dtype=complex), sol))


def realize_from_poles(poles: Sequence[Tuple[object, object]], p=None) -> Realization:
    """Diagonal realization of ``p(x) + sum_k residue_k / (x - lambda_k)``."""
    for lam, _ in poles:
        g = as_gr(lam) if _is_exact(lam) else None
        if g is not None and g.im == 0 and g.re.denominator == 1 and g.re >= 0:
            raise SpectrumError(f"pole {g} lies in Z_+")
    n = len(poles)
    A = [[poles[i][0] if i == j else 0 for j in range(n)] for i in range(n)]
    return Realization(A, [1] * n, [res for _, res in poles], p)


def fourier_decay_check(r: Realization, N: int) -> float:
    """``max over N/2 <= n <= N`` of ``(|f_hat(n)| n!)^(1/n)`` for the realized ``f``."""
    values = [eval_realization(r, x) for x in range(N + 1)]
    if not r.exact:
        values = [as_gr(complex(v)) for v in values]
    return expandability_estimate(fourier_1d(values), N)


def rational_da_extend(r: Realization, zt: ZetaTable, N: int) -> ExpandableFunction:
    """Expandable function whose restriction is the rational function of ``r``."""
    if zt.max_degree < N:
        raise PreconditionError(f"zeta table has degree {zt.max_degree} < {N}")
    r.check_spectrum()
    return ExpandableFunction.from_restriction(lambda x: eval_realization(r, x), N)
