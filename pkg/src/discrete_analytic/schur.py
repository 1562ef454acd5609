"""The space H = T H_2 of entire functions, its multipliers and realizations.

``T`` sends ``z^n`` to ``z^n / n!``; ``H`` carries the range norm, so
``u_n = z^n / n!`` is an orthonormal basis and every operator below is written in
that basis.  Everything here is floating point (default truncation 64).

Multiplication by a Schur function ``s0`` on ``H_2`` becomes the diamond
product by ``s = T s0`` on ``H``, and the de Branges-Rovnyak kernel of ``s`` has
the closed form ``C exp(zA) exp(conj(w) A*) C*`` for a coisometric colligation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, linalg

from .basis import CoefficientSeries
from .products import ExpandableFunction, PreconditionError, eval_expandable
from .zeta import ZetaTable

__all__ = [
    "EntireSeries",
    "CoisometryRealization",
    "t_map",
    "t_inverse",
    "diamond_product",
    "multiplier_matrix",
    "multiplier_norm",
    "blaschke_coefficients",
    "blaschke_realization",
    "cascade",
    "constant_realization",
    "ks_kernel",
    "ks_kernel_via_multiplier",
    "h_kernel",
    "coisometry_realize_eval",
    "transfer_function",
    "taylor_by_sampling",
    "dd_checks",
    "bessel_weight",
    "bessel_norm_check",
    "v_transport",
    "v_intertwining_error",
    "exy_matrix",
    "hda_multiplier_kernel",
    "hda_kernel_by_series",
    "diamond_rational_check",
    "hs_inequality",
    "hs_gram_transport",
]

DEFAULT_N = 64


def _factorials(N: int) -> np.ndarray:
    return np.array([math.factorial(n) for n in range(N)], dtype=float)


@dataclass(frozen=True)
class EntireSeries:
    """Truncated power series ``sum coeffs[n] z^n``; ``space`` is ``"H2"`` or ``"H"``."""

    coeffs: np.ndarray
    space: str = "H2"

    def __post_init__(self):
        if self.space not in ("H2", "H"):
            raise ValueError(f"unknown space {self.space!r}")
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coeffs))

    def norm(self) -> float:
        """``H_2`` norm, or the range norm ``||T^{-1} F||_2`` on ``H``."""
        c = self.coeffs
        if self.space == "H":
            c = c * _factorials(len(c))
        return float(np.linalg.norm(c))

    def padded(self, N: int) -> np.ndarray:
        out = np.zeros(N, dtype=complex)
        k = min(N, len(self.coeffs))
        out[:k] = self.coeffs[:k]
        return out


def t_map(f: EntireSeries) -> EntireSeries:
    if f.space != "H2":
        raise ValueError("t_map expects an H2 series")
    return EntireSeries(f.coeffs / _factorials(len(f)), "H")


def t_inverse(F: EntireSeries) -> EntireSeries:
    if F.space != "H":
        raise ValueError("t_inverse expects an H series")
    return EntireSeries(F.coeffs * _factorials(len(F)), "H2")


def diamond_product(F: EntireSeries, G: EntireSeries, N: Optional[int] = None) -> EntireSeries:
    """``T(T^{-1}F * T^{-1}G)`` truncated to ``N`` coefficients."""
    if N is None:
        N = min(len(F), len(G))
    f, g = t_inverse(F).padded(N), t_inverse(G).padded(N)
    prod = np.convolve(f, g)[:N]
    return t_map(EntireSeries(prod, "H2"))


def multiplier_matrix(s0: Sequence[complex], N: int) -> np.ndarray:
    """Lower-triangular Toeplitz matrix of multiplication by ``s0`` on ``H_2`` coefficients."""
    c = np.zeros(N, dtype=complex)
    s0 = np.asarray(s0, dtype=complex)[:N]
    c[: len(s0)] = s0
    return linalg.toeplitz(c, np.zeros(N, dtype=complex))


def multiplier_norm(s0: Sequence[complex] | EntireSeries, N: int = DEFAULT_N) -> float:
    if isinstance(s0, EntireSeries):
        s0 = s0.coeffs
    return float(np.linalg.norm(multiplier_matrix(s0, N), 2))


def blaschke_coefficients(a: complex, N: int) -> np.ndarray:
    """Taylor coefficients of ``(z - a) / (1 - conj(a) z)``."""
    ab = np.conj(a)
    out = np.empty(N, dtype=complex)
    out[0] = -a
    # (z - a) sum (ab z)^k: coefficient n >= 1 is ab^(n-1) - a ab^n
    for n in range(1, N):
        out[n] = ab ** (n - 1) * (1 - abs(a) ** 2)
    return out


# -- realizations -----------------------------------------------------------------------

@dataclass(frozen=True)
class CoisometryRealization:
    """Colligation ``M = [[A, B], [C, D]]`` on ``C^d + C``."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: complex

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=complex))
        d = A.shape[0]
        if A.shape != (d, d):
            raise ValueError("A must be square")
        B = np.asarray(self.B, dtype=complex).reshape(d)
        C = np.asarray(self.C, dtype=complex).reshape(d)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", complex(self.D))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def colligation(self) -> np.ndarray:
        d = self.dim
        M = np.zeros((d + 1, d + 1), dtype=complex)
        M[:d, :d] = self.A
        M[:d, d] = self.B
        M[d, :d] = self.C
        M[d, d] = self.D
        return M

    def coisometry_defect(self, mask: Sequence[int] = ()) -> float:
        """``max |MM* - I|`` over entries whose indices avoid ``mask``."""
        M = self.colligation()
        E = M @ M.conj().T - np.eye(self.dim + 1)
        keep = [i for i in range(self.dim + 1) if i not in set(mask)]
        return float(np.max(np.abs(E[np.ix_(keep, keep)]), initial=0.0))

    def is_coisometry(self, tol: float = 1e-10, mask: Sequence[int] = ()) -> bool:
        return self.coisometry_defect(mask) <= tol

    def taylor(self, N: int) -> np.ndarray:
        """Coefficients of ``s0(z) = D + z C (I - zA)^{-1} B``: ``D, CB, CAB, ...``."""
        out = np.empty(N, dtype=complex)
        out[0] = self.D
        v = self.B.copy()
        for n in range(1, N):
            out[n] = self.C @ v
            v = self.A @ v
        return out

    def to_json(self) -> dict:
        def enc(a):
            return [[z.real, z.imag] for z in np.ravel(a)]
        return {"A": [enc(row) for row in self.A], "B": enc(self.B), "C": enc(self.C),
                "D": [self.D.real, self.D.imag]}

    @classmethod
    def from_json(cls, obj: dict) -> CoisometryRealization:
        def dec(v):
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        A = [[dec(v) for v in row] for row in obj["A"]]
        return cls(np.array(A, dtype=complex).reshape(len(A), len(A)),
                   [dec(v) for v in obj["B"]], [dec(v) for v in obj["C"]], dec(obj["D"]))


def blaschke_realization(a: complex) -> CoisometryRealization:
    """Unitary colligation of ``(z - a)/(1 - conj(a) z)``."""
    if abs(a) >= 1:
        raise PreconditionError("Blaschke zero must lie in the open unit disk")
    r = math.sqrt(1 - abs(a) ** 2)
    return CoisometryRealization([[np.conj(a)]], [r], [r], -a)


def cascade(r1: CoisometryRealization, r2: CoisometryRealization) -> CoisometryRealization:
    """Realization of the product ``s1 * s2`` (feed ``r1`` into ``r2``)."""
    d1, d2 = r1.dim, r2.dim
    A = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    A[:d1, :d1] = r1.A
    A[d1:, :d1] = np.outer(r2.B, r1.C)
    A[d1:, d1:] = r2.A
    B = np.concatenate([r1.B, r2.B * r1.D])
    C = np.concatenate([r2.D * r1.C, r2.C])
    return CoisometryRealization(A, B, C, r2.D * r1.D)


def constant_realization(c: complex, N: int = DEFAULT_N) -> CoisometryRealization:
    """``s0 = c`` on an ``N``-dimensional backward-shift state space.

    The colligation is a coisometry except in the last state index, where the
    shift is truncated.
    """
    if abs(c) > 1:
        raise PreconditionError("|c| must be at most 1")
    A = np.eye(N, k=1, dtype=complex)
    C = np.zeros(N, dtype=complex)
    C[0] = math.sqrt(1 - abs(c) ** 2)
    return CoisometryRealization(A, np.zeros(N), C, c)


def transfer_function(r: CoisometryRealization, z: complex) -> complex:
    """Classical ``s0(z) = D + z C (I - zA)^{-1} B``."""
    M = np.eye(r.dim) - z * r.A
    return complex(r.D + z * (r.C @ np.linalg.solve(M, r.B)))


def coisometry_realize_eval(r: CoisometryRealization, z: complex,
                            tol: float = 1e-10) -> complex:
    """``s(z) = D + int_0^z C exp(tA) B dt``.

    The integral is the top-right block of ``expm([[zA, zB], [0, 0]])``.
    """
    if not r.is_coisometry(tol):
        warnings.warn("realization is not a coisometry", RuntimeWarning, stacklevel=2)
    d = r.dim
    E = np.zeros((d + 1, d + 1), dtype=complex)
    E[:d, :d] = z * r.A
    E[:d, d] = z * r.B
    integral = linalg.expm(E)[:d, d]
    return complex(r.D + r.C @ integral)


def taylor_by_sampling(fn, N: int, radius: float = 0.5, samples: int = 256) -> np.ndarray:
    """Taylor coefficients of ``fn`` from FFT samples on ``|z| = radius``."""
    theta = 2 * np.pi * np.arange(samples) / samples
    vals = np.array([fn(radius * np.exp(1j * t)) for t in theta])
    c = np.fft.fft(vals) / samples
    return c[:N] / radius ** np.arange(N)


# -- kernels ----------------------------------------------------------------------------

def h_kernel(z: complex, w: complex, N: int = DEFAULT_N) -> complex:
    """``K_H(z, w) = sum (z conj w)^n / (n!)^2``."""
    t = z * np.conj(w)
    return complex(sum(t ** n / math.factorial(n) ** 2 for n in range(N)))


def ks_kernel(r: CoisometryRealization, z: complex, w: complex) -> complex:
    """``C exp(zA) exp(conj(w) A*) C*``."""
    left = r.C @ linalg.expm(z * r.A)
    right = linalg.expm(np.conj(w) * r.A.conj().T) @ r.C.conj()
    return complex(left @ right)


def ks_kernel_via_multiplier(s0: Sequence[complex], z: complex, w: complex,
                             N: int = DEFAULT_N) -> complex:
    """``((I - M M*) K_H(., w))(z)`` computed in the basis ``z^n / n!``.

    ``M`` is lower triangular, so the truncated ``M M*`` is exact on the kept indices.
    """
    M = multiplier_matrix(s0, N)
    fact = _factorials(N)
    k = np.conj(w) ** np.arange(N) / fact
    v = k - M @ (M.conj().T @ k)
    return complex(np.sum(v * z ** np.arange(N) / fact))


# -- the differentiation operator ---------------------------------------------------------

@dataclass
class DDReport:
    intertwines_exactly: bool
    dd_adj_error: float
    adj_dd_error: float

    def __bool__(self):
        return self.intertwines_exactly and self.dd_adj_error < 1e-12 and self.adj_dd_error < 1e-12


def dd_checks(N: int, seed: int = 0) -> DDReport:
    """``d/dz T = T R0`` on monomials (exact) and the coisometry relations of ``d/dz``.

    In the basis ``z^n/n!``, ``d/dz`` is the backward shift.  ``dd dd* = I`` is
    compared off the last index; ``dd* dd = I - C* C`` (``C`` = evaluation at 0)
    everywhere.  Both are applied to a random vector.
    """
    if N < 4:
        raise ValueError("N must be at least 4")
    exact = True
    for n in range(N + 1):
        # T z^n = z^n / n!, differentiate: n z^(n-1) / n!
        lhs = (n - 1, Fraction(n, math.factorial(n))) if n else (0, Fraction(0))
        # R0 z^n = z^(n-1), then T
        rhs = (n - 1, Fraction(1, math.factorial(n - 1))) if n else (0, Fraction(0))
        exact &= lhs == rhs
    dd = np.eye(N, k=1)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=N) + 1j * rng.normal(size=N)
    e1 = dd @ dd.T @ v - v
    p0 = np.zeros((N, N))
    p0[0, 0] = 1
    e2 = dd.T @ dd @ v - (np.eye(N) - p0) @ v
    return DDReport(exact, float(np.max(np.abs(e1[:-1]))), float(np.max(np.abs(e2))))


# -- Bessel weight ------------------------------------------------------------------------

def bessel_weight(r: float) -> float:
    """``(1/pi) int_R exp(-r cosh t) dt``, by quadrature."""
    if r <= 0:
        return math.inf
    # integrand is below 1e-300 once r cosh t > 700
    t_max = math.acosh(max(1.0, 700.0 / r))
    val, _ = integrate.quad(lambda t: math.exp(-r * math.cosh(t)), 0.0, t_max, limit=200)
    return 2.0 * val / math.pi


def bessel_norm_check(n: int, resolution: int = 200) -> float:
    """``int_C |z|^(2n) w(2|z|) dA / (n!)^2`` with ``w`` from :func:`bessel_weight`.

    Radial quadrature: ``2 pi int_0^inf r^(2n+1) w(2r) dr``; ``resolution`` caps
    the number of adaptive subintervals.
    """
    if n > 8:
        raise ValueError("n must be at most 8")
    upper = 2.0 * n + 60.0

    def integrand(r):
        return r ** (2 * n + 1) * bessel_weight(2 * r) if r > 0 else 0.0

    val, _ = integrate.quad(integrand, 0.0, upper, limit=resolution, epsrel=1e-10)
    return 2 * math.pi * val / math.factorial(n) ** 2


# -- transport to H_DA --------------------------------------------------------------------

def v_transport(F: EntireSeries, zt: Optional[ZetaTable] = None) -> ExpandableFunction:
    """``z^n -> zeta_n``: the ``z^n`` coefficients of ``F`` become zeta-coefficients."""
    if zt is not None and len(F) - 1 > zt.max_degree:
        raise PreconditionError(f"series length {len(F)} exceeds table degree {zt.max_degree}")
    coeffs = tuple(complex(c) for c in F.coeffs)
    return ExpandableFunction(CoefficientSeries(coeffs, "zeta"), len(F) - 1)


def v_intertwining_error(F: EntireSeries, zt: ZetaTable) -> float:
    """``max |delta_x V F - V F'|`` over the table window (minus its right column)."""
    VF = v_transport(F, zt)
    dF = EntireSeries(np.polynomial.polynomial.polyder(F.coeffs), F.space)
    VdF = v_transport(dF, zt)
    w = zt.window
    err = 0.0
    for x in range(w.x_min, w.x_max):
        for y in range(w.y_min, w.y_max + 1):
            lhs = complex(eval_expandable(VF, zt, x + 1, y)) - complex(eval_expandable(VF, zt, x, y))
            rhs = complex(eval_expandable(VdF, zt, x, y))
            err = max(err, abs(lhs - rhs))
    return err


def exy_matrix(A: np.ndarray, x: int, y: int) -> np.ndarray:
    """``(I + A)^x ((1+i)I + iA)^y ((1+i)I + A)^{-y}``."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    d = A.shape[0]
    Id = np.eye(d)
    den = (1 + 1j) * Id + A
    if np.linalg.cond(den) > 1e12:
        raise PreconditionError("(1+i)I + A is singular")
    mob = ((1 + 1j) * Id + 1j * A) @ np.linalg.inv(den)
    return np.linalg.matrix_power(Id + A, x) @ np.linalg.matrix_power(mob, y)


def hda_multiplier_kernel(r: CoisometryRealization, p1: Tuple[int, int],
                          p2: Tuple[int, int]) -> complex:
    """``C e_{p1}(A) e_{p2}(A)* C*``; requires ``||A|| < sqrt 2``."""
    if np.linalg.norm(r.A, 2) >= math.sqrt(2):
        raise PreconditionError("||A|| must be below sqrt(2)")
    left = r.C @ exy_matrix(r.A, *p1)
    right = exy_matrix(r.A, *p2).conj().T @ r.C.conj()
    return complex(left @ right)


def hda_kernel_by_series(r: CoisometryRealization, p1: Tuple[int, int], p2: Tuple[int, int],
                         zt: ZetaTable, N: Optional[int] = None) -> complex:
    """``sum_{n,m<=N} zeta_n(p1) conj(zeta_m(p2)) / (n! m!) C A^n A*^m C*``."""
    if N is None:
        N = zt.max_degree
    u = np.zeros(r.dim, dtype=complex)
    v = np.zeros(r.dim, dtype=complex)
    row = r.C.copy()
    for n in range(N + 1):
        f = math.factorial(n)
        u += complex(zt(n, *p1)) / f * row
        v += complex(zt(n, *p2)) / f * row
        row = row @ r.A
    return complex(u @ v.conj())


# -- rationality and H(s) -------------------------------------------------------------------

def diamond_rational_check(F: EntireSeries, p: Sequence[complex], tol: float = 1e-10) -> bool:
    """``p`` diamond ``F`` is a polynomial, judged from the truncation of ``F``.

    ``p`` is given by its ``z^n`` coefficients in ``H``.  The ``T^{-1}``
    coefficients of the product from index ``max(deg p + 1, N // 2)`` on must be
    below ``tol`` relative to the leading ones, so numerators of degree below
    ``N / 2`` are recognised.
    """
    P = EntireSeries(np.asarray(p, dtype=complex), "H")
    if abs(P.coeffs[0]) == 0:
        raise PreconditionError("p must not vanish at the origin")
    N = len(F)
    prod = t_inverse(diamond_product(P, F, N)).coeffs
    cut = max(len(P), N // 2)
    scale = max(np.max(np.abs(prod[:cut]), initial=0.0), 1.0)
    return bool(np.max(np.abs(prod[cut:]), initial=0.0) <= tol * scale)


def hs_inequality(r: CoisometryRealization, ws: Sequence[complex], cs: Sequence[complex],
                  tol: float = 1e-12) -> Tuple[float, float]:
    """``(||dF||^2, ||F||^2 - |F(0)|^2)`` for ``F = sum c_j K_s(., w_j)``.

    With ``F = C exp(zA) x`` the ``H(s)`` norm of ``F`` is ``||P x||``, ``P`` the
    projection onto the span of ``A*^k C*``; ``dF`` corresponds to ``A x`` and
    ``F(0)`` to ``C x``.
    """
    d = r.dim
    x = np.zeros(d, dtype=complex)
    for w, c in zip(ws, cs):
        x += c * (linalg.expm(np.conj(w) * r.A.conj().T) @ r.C.conj())
    K = np.empty((d, d), dtype=complex)
    col = r.C.conj()
    for k in range(d):
        K[:, k] = col
        col = r.A.conj().T @ col
    Q, R = np.linalg.qr(K)
    rank = int(np.sum(np.abs(np.diag(R)) > tol * max(1.0, np.abs(R).max())))
    Q = Q[:, :rank]
    P = Q @ Q.conj().T
    lhs = float(np.linalg.norm(P @ (r.A @ x)) ** 2)
    rhs = float(np.linalg.norm(P @ x) ** 2 - abs(r.C @ x) ** 2)
    return lhs, rhs


def hs_gram_transport(r: CoisometryRealization, points: Sequence[complex],
                      N: int = DEFAULT_N) -> Tuple[float, float]:
    """Errors of the ``H(s0)`` and ``H(s)`` Gram matrices against ``(I - MM*)``.

    ``H(s0)``: closed form ``(1 - s0(z) conj s0(w)) / (1 - z conj w)`` against
    ``sum (I - MM*)_{nm} z^n conj(w)^m``.  ``H(s)``: ``K_s`` from the realization
    against the same matrix with ``z^n, w^m`` replaced by ``z^n/n!, w^m/m!``.
    """
    s0 = r.taylor(N)
    M = multiplier_matrix(s0, N)
    G = np.eye(N) - M @ M.conj().T
    fact = _factorials(N)
    pts = np.asarray(points, dtype=complex)
    V = pts[:, None] ** np.arange(N)[None, :]
    classical = V @ G @ V.conj().T
    closed = np.empty_like(classical)
    for i, z in enumerate(pts):
        for j, w in enumerate(pts):
            closed[i, j] = (1 - transfer_function(r, z) * np.conj(transfer_function(r, w))) / (
                1 - z * np.conj(w))
    VT = V / fact
    transported = VT @ G @ VT.conj().T
    direct = np.array([[ks_kernel(r, z, w) for w in pts] for z in pts])
    return (float(np.max(np.abs(classical - closed))),
            float(np.max(np.abs(transported - direct))))
