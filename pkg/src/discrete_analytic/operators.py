"""Operator truncations in the orthonormal basis ``e_n = zeta_n / n!`` and the kernel of H_DA.

Matrix convention: entry ``(i, j)`` is the ``e_i`` coefficient of ``op(e_j)``.
Products of truncations are wrong near the bottom-right edge, so matrix-mode
identity checks compare only indices below ``N - mask``.  Lattice mode acts on
windowed functions and is exact everywhere it is defined.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .gaussian import GaussianRational, I, ONE, ZERO
from .lattice import LatticeFunction, Window, dbar, delta_x, delta_y
from .products import z_operator
from .zeta import ZetaTable

__all__ = [
    "OperatorMatrix",
    "KernelMatrix",
    "KernelValue",
    "BracketReport",
    "Identity",
    "IDENTITIES",
    "matrix_of",
    "bracket_check",
    "run_identities",
    "random_lattice_functions",
    "deltay_series",
    "deltay_check",
    "commutator_A_check",
    "shift_relations",
    "deltay_series_norm",
    "kernel_eval",
    "kernel_gram",
    "fock_dominance",
]

HALF = GaussianRational(1, 0) / 2
Q = GaussianRational(-1, 1) / 2  # (i - 1)/2


# -- matrices --------------------------------------------------------------------

class OperatorMatrix:
    """``N x N`` truncation with exact entries and a declared band profile."""

    __slots__ = ("name", "entries", "band")

    def __init__(self, entries, band: Optional[Tuple[int, int]] = None, name: str = ""):
        entries = np.asarray(entries, dtype=object)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("operator matrix must be square")
        self.entries = entries
        self.name = name
        actual = self._bandwidths()
        if band is None:
            band = actual
        elif actual[0] > band[0] or actual[1] > band[1]:
            raise ValueError(f"entries outside declared band {band}: found {actual}")
        self.band = band

    def _bandwidths(self) -> Tuple[int, int]:
        lower = upper = 0
        n = self.size
        for i in range(n):
            for j in range(n):
                if self.entries[i, j]:
                    lower = max(lower, i - j)
                    upper = max(upper, j - i)
        return lower, upper

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, N: int) -> OperatorMatrix:
        m = np.full((N, N), ZERO, dtype=object)
        for i in range(N):
            m[i, i] = ONE
        return cls(m, (0, 0), "I")

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries.dot(other.entries))

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries + other.entries)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries - other.entries)

    def __mul__(self, c) -> OperatorMatrix:
        return OperatorMatrix(self.entries * c)

    __rmul__ = __mul__

    def adjoint(self) -> OperatorMatrix:
        conj = np.vectorize(lambda v: v.conjugate() if isinstance(v, GaussianRational) else v,
                            otypes=[object])
        return OperatorMatrix(conj(self.entries.T), self.band[::-1])

    def __getitem__(self, ij):
        return self.entries[ij]

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.entries], dtype=complex)

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.to_complex(), 2))

    def mismatches(self, other: OperatorMatrix, mask: int = 0) -> List[Tuple[int, int]]:
        """Index pairs below ``N - mask`` where the entries differ."""
        top = self.size - mask
        return [(i, j) for i in range(top) for j in range(top)
                if self.entries[i, j] != other.entries[i, j]]

    def to_csv(self) -> str:
        lines = ["i,j,re,im"]
        for i in range(self.size):
            for j in range(self.size):
                c = complex(self.entries[i, j])
                lines.append(f"{i},{j},{float(c.real) + 0.0!r},{float(c.imag) + 0.0!r}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"OperatorMatrix({self.name or '?'}, N={self.size}, band={self.band})"


def _zeros(N):
    return np.full((N, N), ZERO, dtype=object)


def matrix_of(op: str, N: int) -> OperatorMatrix:
    """Truncated matrix of ``delta_x``, ``delta_y``, ``Z``, ``Z_adj`` or ``A_reZ``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    m = _zeros(N)
    if op == "delta_x":
        for n in range(1, N):
            m[n - 1, n] = ONE
        return OperatorMatrix(m, (0, 1), op)
    if op == "Z":
        for n in range(N):
            m[n, n] = GaussianRational(n)
            if n + 1 < N:
                m[n + 1, n] = GaussianRational(n + 1)
        return OperatorMatrix(m, (1, 0), op)
    if op == "Z_adj":
        for n in range(N):
            m[n, n] = GaussianRational(n)
            if n >= 1:
                m[n - 1, n] = GaussianRational(n)
        return OperatorMatrix(m, (0, 1), op)
    if op == "A_reZ":
        z, za = matrix_of("Z", N), matrix_of("Z_adj", N)
        return OperatorMatrix((z.entries + za.entries) * HALF, (1, 1), op)
    if op == "delta_y":
        # delta_y e_n = i sum_k ((i-1)/2)^k e_{n-k-1}
        for n in range(N):
            c = I
            for k in range(n):
                m[n - k - 1, n] = c
                c = c * Q
        return OperatorMatrix(m, (0, N - 1), op)
    raise ValueError(f"unknown operator {op!r}")


# -- bracket identities -------------------------------------------------------------

LatticeOp = Callable[[LatticeFunction], LatticeFunction]

LATTICE_OPS: Dict[str, LatticeOp] = {
    "delta_x": delta_x,
    "delta_y": delta_y,
    "Z": z_operator,
    "dbar": dbar,
}


@dataclass
class BracketReport:
    name: str
    mode: str
    passed: bool
    checked: int
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" first violation {self.violations[0]}" if self.violations else ""
        return f"{status} [{self.mode}] {self.name} ({self.checked} checked){extra}"


@dataclass(frozen=True)
class Identity:
    """``[op1, op2] == rhs``.

    ``uncorrected`` marks an uncorrected variant kept as a regression check;
    ``expected`` says whether it should hold.
    """

    name: str
    op1: str
    op2: str
    rhs: Callable
    uncorrected: bool = False
    expected: bool = True


def _lin(*terms):
    """Sum of ``coeff * op(f)`` over lattice terms; windows intersect."""
    def apply(f):
        out = None
        for c, op in terms:
            v = op(f) * c
            out = v if out is None else out + v
        return out
    return apply


def _ident(f):
    return f


def _compose(*ops):
    def apply(f):
        for op in reversed(ops):
            f = op(f)
        return f
    return apply


def _zero_op(f):
    return f * 0


def _dbar_z_rhs(f):
    d = dbar(f)
    return d * (GaussianRational(1, 1) / 2) + delta_y(d) * (I / 2)


IDENTITIES: Tuple[Identity, ...] = (
    Identity("[delta_x,Z] = 1 + delta_x", "delta_x", "Z", _lin((ONE, _ident), (ONE, delta_x))),
    Identity("[delta_y,Z] = i(1 + delta_y + delta_y^2)", "delta_y", "Z",
             _lin((I, _ident), (I, delta_y), (I, _compose(delta_y, delta_y))),
             uncorrected=True, expected=False),
    Identity("[delta_y,Z] = i(1 + delta_y + delta_y^2/2)", "delta_y", "Z",
             _lin((I, _ident), (I, delta_y), (I * HALF, _compose(delta_y, delta_y)))),
    Identity("[dbar,Z] = ((1+i)/2 + (i/2) delta_y) dbar", "dbar", "Z", _dbar_z_rhs),
    Identity("[dbar,delta_x] = 0", "dbar", "delta_x", _zero_op),
    Identity("[dbar,delta_y] = 0", "dbar", "delta_y", _zero_op),
    Identity("[delta_x,delta_y] = 0", "delta_x", "delta_y", _zero_op),
)


def random_lattice_functions(count: int, window: Window, seed: int = 0,
                             bound: int = 9) -> List[LatticeFunction]:
    """Functions with small random Gaussian-integer values (deterministic per seed)."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        vals = np.empty(window.shape, dtype=object)
        for idx in np.ndindex(*window.shape):
            vals[idx] = GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
        out.append(LatticeFunction(window, vals))
    return out


def _lattice_bracket(op1: LatticeOp, op2: LatticeOp, f: LatticeFunction) -> LatticeFunction:
    return op1(op2(f)) - op2(op1(f))


def bracket_check(identity: Identity, mode: str = "lattice", functions=None,
                  N: int = 16, mask: int = 2) -> BracketReport:
    """Check ``[op1, op2] f == rhs f``.

    Lattice mode compares on the common window of both sides for every function
    in ``functions``.  Matrix mode compares truncations below ``N - mask``;
    ``dbar`` vanishes identically there, so only the other brackets apply.
    """
    if mode == "lattice":
        if functions is None:
            functions = random_lattice_functions(20, Window(0, 7, -3, 4))
        op1, op2 = LATTICE_OPS[identity.op1], LATTICE_OPS[identity.op2]
        violations = []
        checked = 0
        for k, f in enumerate(functions):
            lhs = _lattice_bracket(op1, op2, f)
            rhs = identity.rhs(f)
            w = lhs.window.intersect(rhs.window)
            lhs, rhs = lhs.restrict(w), rhs.restrict(w)
            for x, y, v in lhs.items():
                checked += 1
                if v != rhs(x, y):
                    violations.append((k, (x, y), str(v - rhs(x, y))))
        return BracketReport(identity.name, mode, not violations, checked, violations)
    if mode == "matrix":
        lhs, rhs = _matrix_bracket(identity, N)
        bad = lhs.mismatches(rhs, mask)
        return BracketReport(identity.name, mode, not bad, (N - mask) ** 2, bad)
    raise ValueError(f"unknown mode {mode!r}")


def _matrix_bracket(identity: Identity, N: int):
    # Extra rows/columns keep products exact on the compared block.
    M = N + 2
    mats = {k: matrix_of(k, M) for k in ("delta_x", "delta_y", "Z")}
    if "dbar" in (identity.op1, identity.op2):
        raise ValueError("dbar is zero on H_DA; use lattice mode")
    a, b = mats[identity.op1], mats[identity.op2]
    lhs = a @ b - b @ a
    Id = OperatorMatrix.identity(M)
    dy, dx = mats["delta_y"], mats["delta_x"]
    table = {
        "[delta_x,Z] = 1 + delta_x": Id + dx,
        "[delta_y,Z] = i(1 + delta_y + delta_y^2)": (Id + dy + dy @ dy) * I,
        "[delta_y,Z] = i(1 + delta_y + delta_y^2/2)": (Id + dy + dy @ dy * HALF) * I,
        "[delta_x,delta_y] = 0": Id * ZERO,
    }
    rhs = table[identity.name]
    crop = lambda m: OperatorMatrix(m.entries[:N, :N])  # noqa: E731
    return crop(lhs), crop(rhs)


def run_identities(functions=None, mode: str = "lattice") -> List[BracketReport]:
    out = []
    for ident in IDENTITIES:
        if mode == "matrix" and "dbar" in (ident.op1, ident.op2):
            continue
        out.append(bracket_check(ident, mode, functions))
    return out


# -- delta_y as a series in delta_x ----------------------------------------------------

def deltay_series(f: LatticeFunction, with_i: bool = True) -> LatticeFunction:
    """``i sum_k ((i-1)/2)^k delta_x^(k+1) f`` (``with_i=False`` drops the leading ``i``).

    The sum runs until ``delta_x`` empties the window or returns zero.
    """
    term = delta_x(f)
    acc = term * (I if with_i else ONE)
    c = (I if with_i else ONE)
    while term.window.width >= 2:
        term = delta_x(term)
        c = c * Q
        if term.is_zero():
            break
        acc = acc + term * c
    return acc


@dataclass
class DeltaYReport:
    corrected_passed: bool
    uncorrected_fails_on_zeta1: bool
    failures: list

    def __bool__(self):
        return self.corrected_passed and self.uncorrected_fails_on_zeta1


def deltay_check(N: int, zt: ZetaTable) -> DeltaYReport:
    """Compare direct ``delta_y zeta_n`` with the series in ``delta_x`` for ``n <= N``.

    The window must be wider than ``N`` so that ``delta_x^(n+1) zeta_n = 0`` is
    reached before the window runs out.
    """
    if zt.max_degree < N:
        raise ValueError(f"zeta table degree {zt.max_degree} < {N}")
    if zt.window.width < N + 2:
        raise ValueError(f"window width {zt.window.width} too small for n <= {N}")
    failures = []
    for n in range(N + 1):
        f = zt.lattice(n)
        direct = delta_y(f)
        series = deltay_series(f)
        w = direct.window.intersect(series.window)
        if direct.restrict(w) != series.restrict(w):
            failures.append(n)
    f1 = zt.lattice(1)
    direct = delta_y(f1)
    bare = deltay_series(f1, with_i=False)
    w = direct.window.intersect(bare.window)
    uncorrected_fails = direct.restrict(w) != bare.restrict(w)
    return DeltaYReport(not failures, uncorrected_fails, failures)


def deltay_series_norm(N: int) -> float:
    """Spectral norm of the truncated ``((i-1)/2) delta_x``."""
    return (matrix_of("delta_x", N) * Q).spectral_norm()


# -- [delta_x, A] ---------------------------------------------------------------------

@dataclass
class CommutatorReport:
    uncorrected_passed: bool
    corrected_passed: bool
    uncorrected_mismatches: list
    corrected_mismatches: list
    N: int

    def __bool__(self):
        return self.uncorrected_passed


def commutator_A_check(N: int) -> CommutatorReport:
    """``[delta_x, A]`` against ``(I + delta_x + delta_x^2)/2`` and ``(I + delta_x)^2 / 2``.

    Indices ``0..N-3`` are compared.
    """
    if N < 6:
        raise ValueError("N must be at least 6")
    dx, A = matrix_of("delta_x", N), matrix_of("A_reZ", N)
    Id = OperatorMatrix.identity(N)
    lhs = dx @ A - A @ dx
    uncorrected = (Id + dx + dx @ dx) * HALF
    corrected = (Id + dx * 2 + dx @ dx) * HALF
    pm, cm = lhs.mismatches(uncorrected, 2), lhs.mismatches(corrected, 2)
    return CommutatorReport(not pm, not cm, pm, cm, N)


# -- shift relations ------------------------------------------------------------------

def shift_relations(N: int) -> Dict[str, bool]:
    """``dx dx* = I`` off the last index and ``dx* dx = I - P_0`` on all indices."""
    dx = matrix_of("delta_x", N)
    dxs = dx.adjoint()
    Id = OperatorMatrix.identity(N)
    p0 = OperatorMatrix(_zeros(N))
    p0.entries[0, 0] = ONE
    return {
        "dx_dx_adj_is_identity": not (dx @ dxs).mismatches(Id, 1),
        "dx_adj_dx_is_identity_minus_p0": not (dxs @ dx).mismatches(Id - p0, 0),
    }


# -- kernel of H_DA -------------------------------------------------------------------

@dataclass(frozen=True)
class KernelValue:
    value: GaussianRational
    tail_bound: float
    exact: bool

    def __complex__(self):
        return complex(self.value)


def kernel_eval(p1: Tuple[int, int], p2: Tuple[int, int], zt: ZetaTable,
                N: Optional[int] = None) -> KernelValue:
    """Partial sum ``sum_{n<=N} zeta_n(p1) conj(zeta_n(p2)) / (n!)^2``.

    Exact as a total when both points lie on ``y = 0`` with ``x >= 0`` (the series
    terminates).  Otherwise the tail is estimated from the last term, using the
    ratio ``1/2`` of the term sizes.
    """
    if N is None:
        N = zt.max_degree
    if N > zt.max_degree:
        raise ValueError(f"N={N} exceeds table degree {zt.max_degree}")
    acc = ZERO
    fact = 1
    last = 0.0
    for n in range(N + 1):
        if n:
            fact *= n
        a, b = zt(n, *p1), zt(n, *p2)
        term = a * b.conjugate() / (fact * fact)
        acc = acc + term
        last = abs(term)
    terminates = p1[1] == 0 and p2[1] == 0 and min(p1[0], p2[0]) <= N and min(p1[0], p2[0]) >= 0
    tail = 0.0 if terminates else last
    return KernelValue(acc, tail, terminates)


@dataclass
class KernelMatrix:
    points: list
    gram: np.ndarray
    N: int

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.gram).min())

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.gram - self.gram.conj().T), initial=0.0) <= tol)

    def to_csv(self) -> str:
        lines = ["i,j,re,im"]
        for i in range(self.gram.shape[0]):
            for j in range(self.gram.shape[1]):
                c = self.gram[i, j]
                lines.append(f"{i},{j},{float(c.real) + 0.0!r},{float(c.imag) + 0.0!r}")
        return "\n".join(lines) + "\n"


def kernel_gram(points: Sequence[Tuple[int, int]], zt: ZetaTable,
                N: Optional[int] = None) -> KernelMatrix:
    n = len(points)
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            v = complex(kernel_eval(points[i], points[j], zt, N).value)
            gram[i, j] = v
            gram[j, i] = v.conjugate()
    return KernelMatrix(list(points), gram, N if N is not None else zt.max_degree)


def fock_dominance(points: Sequence[complex], N: int) -> KernelMatrix:
    """Gram matrix of ``K_F - K_H = sum_n (z conj w)^n (1/n! - 1/(n!)^2)``."""
    z = np.asarray(points, dtype=complex)
    zw = np.outer(z, z.conj())
    gram = np.zeros_like(zw)
    for n in range(N + 1):
        f = math.factorial(n)
        gram += zw ** n * (1.0 / f - 1.0 / (f * f))
    return KernelMatrix(list(points), gram, N)
