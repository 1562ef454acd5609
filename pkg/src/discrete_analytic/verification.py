"""Acceptance checks shared by the CLI ``verify-all`` command.

Each check returns a :class:`CheckResult`; ``quick`` shrinks sizes where the
criterion allows it without changing tolerances.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from .basis import fourier_1d, fourier_2d, inverse_fourier_1d, inverse_fourier_2d
from .gaussian import GaussianRational, ZERO
from .lattice import LatticeFunction, Window, dbar, delta_x, is_discrete_analytic
from .operators import (
    IDENTITIES,
    bracket_check,
    commutator_A_check,
    deltay_check,
    fock_dominance,
    kernel_eval,
    kernel_gram,
    matrix_of,
    random_lattice_functions,
    shift_relations,
)
from .products import (
    ExpandableFunction,
    ck_product,
    ck_quotient,
    z_operator,
)
from .realization import fourier_decay_check, realize_from_poles
from .schur import (
    blaschke_realization,
    cascade,
    coisometry_realize_eval,
    CoisometryRealization,
    bessel_norm_check,
    hs_inequality,
    ks_kernel,
    ks_kernel_via_multiplier,
    multiplier_norm,
)
from .zeta import growth_rate, zeta_by_extension, zeta_by_taylor

__all__ = ["CheckResult", "CHECKS", "run_checks", "random_gr"]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number:2d}: {self.title} -- {self.detail} ({self.seconds:.1f}s)"


def random_gr(rng: random.Random, bound: int = 9) -> GaussianRational:
    return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))


def _c1(quick: bool, seed: int) -> Tuple[bool, str]:
    N, w = (12, Window(0, 6, -3, 3)) if quick else (30, Window(0, 12, -6, 6))
    t0 = time.perf_counter()
    a = zeta_by_extension(N, w)
    b = zeta_by_taylor(N, w)
    dt = time.perf_counter() - t0
    same = a.values == b.values
    return same and dt < 60, f"n<={N} on {w.width}x{w.height} window, exact equality={same}, {dt:.1f}s"


def _c2(quick: bool, seed: int):
    N, w = (12, Window(0, 6, -3, 3)) if quick else (30, Window(0, 12, -6, 6))
    zt = zeta_by_extension(N, w)
    bad = [n for n in range(N + 1) if not dbar(zt.lattice(n)).is_zero()]
    win = Window(0, 4, 0, 4)
    z2 = is_discrete_analytic(LatticeFunction.from_callable(
        lambda x, y: GaussianRational(x, y) ** 2, win))
    z3 = is_discrete_analytic(LatticeFunction.from_callable(
        lambda x, y: GaussianRational(x, y) ** 3, win))
    ok = (not bad and bool(z2) and not z3 and z3.point == (0, 0)
          and z3.residual == GaussianRational(-1, 1))
    return ok, f"dbar zeta_n nonzero for {bad or 'none'}; z^3 witness {z3.point} residual {z3.residual}"


def _c3(quick: bool, seed: int):
    N = 12 if quick else 30
    zt = zeta_by_extension(N, Window(0, 8, -4, 4))
    bad = []
    for n in range(1, N):
        f = zt.lattice(n)
        if delta_x(f) != zt.lattice(n - 1).restrict(delta_x(f).window) * n:
            bad.append(("dx", n))
        zf = z_operator(f)
        rhs = (zt.lattice(n + 1) + f * n).restrict(zf.window)
        if zf != rhs:
            bad.append(("Z", n))
    f = zt.lattice(0)
    zf = z_operator(f)
    if zf != zt.lattice(1).restrict(zf.window):
        bad.append(("Z", 0))
    return not bad, f"n<={N - 1}, violations: {bad or 'none'}"


def _c4(quick: bool, seed: int):
    t0 = time.perf_counter()
    g = growth_rate(1, 1, 200)
    dt = time.perf_counter() - t0
    return 0.693 <= g <= 0.721 and dt < 120, f"estimate {g:.5f} (target {1 / math.sqrt(2):.5f}), {dt:.1f}s"


def _c5(quick: bool, seed: int):
    rng = random.Random(seed)
    bad = 0
    for _ in range(50):
        vals = [random_gr(rng) for _ in range(20)]
        c = fourier_1d(vals)
        if [inverse_fourier_1d(c, x) for x in range(20)] != vals:
            bad += 1
    w = Window(0, 5, 0, 5)
    for _ in range(20):
        f = LatticeFunction.from_callable(lambda x, y: random_gr(rng), w)
        if inverse_fourier_2d(fourier_2d(f), w) != f:
            bad += 1
    return bad == 0, f"{bad} failed round trips of 70"


def _random_poly(rng: random.Random, deg: int) -> ExpandableFunction:
    return ExpandableFunction.from_coefficients([random_gr(rng) for _ in range(deg + 1)])


def _c6(quick: bool, seed: int):
    rng = random.Random(seed)
    bad = 0
    for _ in range(20):
        f = _random_poly(rng, rng.randint(0, 8))
        g = _random_poly(rng, rng.randint(0, 8))
        fg, gf = ck_product(f, g), ck_product(g, f)
        deg = max(fg.coeffs.degree, 0) + 3
        law = all(fg.restrict(x) == f.restrict(x) * g.restrict(x) for x in range(deg))
        if not law or fg != gf:
            bad += 1
    z2 = ExpandableFunction.zeta(2)
    sq = ck_product(z2, z2).coeffs.coeffs
    ok_sq = sq == (ZERO, ZERO, GaussianRational(2), GaussianRational(4), GaussianRational(1))
    return bad == 0 and ok_sq, f"{bad} failing pairs of 20; zeta_2*zeta_2 coefficients {[str(c) for c in sq]}"


def _c7(quick: bool, seed: int):
    N = 20
    one = ExpandableFunction.zeta(0)
    q = ExpandableFunction.from_coefficients([1, 1])
    f = ck_quotient(one, q, N)
    expected = [GaussianRational(Fraction((-1) ** n, math.factorial(n + 1))) for n in range(N + 1)]
    got = [f[n] for n in range(N + 1)]
    prod = ck_product(q, f)
    in_coeffs = [prod[n] for n in range(N + 1)] == [one.coeffs[n] for n in range(N + 1)]
    return got == expected and in_coeffs, f"coefficients match={got == expected}, q*f = 1 to degree {N}: {in_coeffs}"


def _c8(quick: bool, seed: int):
    r1 = realize_from_poles([(-1, 1)])
    r2 = realize_from_poles([(-1, 1), (-2, -1)])
    a, b = fourier_decay_check(r1, 30), fourier_decay_check(r2, 30)
    return a <= 1.05 and b <= 1.05, f"1/(x+1): {a:.4f}, 1/((x+1)(x+2)): {b:.4f}"


def _c9(quick: bool, seed: int):
    fns = random_lattice_functions(20, Window(0, 7, -3, 4), seed)
    reports = [bracket_check(ident, "lattice", fns) for ident in IDENTITIES
               if ident.uncorrected or ident.expected]
    comm = commutator_A_check(16)
    failed = [r.name for r in reports if not r.passed]
    if not comm.uncorrected_passed:
        failed.append(f"[delta_x,A] = (I+dx+dx^2)/2 at {comm.uncorrected_mismatches[0]}")
    ok = not failed
    note = f"failing: {failed}" if failed else "all identities exact"
    return ok, note + f"; corrected [delta_x,A] = (I+dx)^2/2 holds: {comm.corrected_passed}"


def _c10(quick: bool, seed: int):
    zt = zeta_by_extension(15, Window(0, 17, -2, 2))
    rep = deltay_check(15, zt)
    return bool(rep), (f"corrected series exact for n<=15: {rep.corrected_passed}; "
                       f"form without leading i fails on zeta_1: {rep.uncorrected_fails_on_zeta1}")


def _c11(quick: bool, seed: int):
    w = Window(0, 6, -3, 3)
    zt = zeta_by_extension(30, w)
    k11 = kernel_eval((1, 0), (1, 0), zt).value
    k21 = kernel_eval((2, 0), (1, 0), zt).value
    rng = random.Random(seed)
    pts = rng.sample(list(w.points()), 6)
    g = kernel_gram(pts, zt).min_eigenvalue
    nrng = np.random.default_rng(seed)
    z = nrng.uniform(-0.7, 0.7, 5) + 1j * nrng.uniform(-0.7, 0.7, 5)
    fd = fock_dominance(z, 30).min_eigenvalue
    ok = k11 == 2 and k21 == 3 and g >= -1e-10 and fd >= -1e-10
    return ok, f"K11={k11}, K21={k21}, gram min eig {g:.3e}, Fock dominance min eig {fd:.3e}"


def _c12(quick: bool, seed: int):
    rng = np.random.default_rng(seed)
    norms = []
    kernel_err = 0.0
    ineq_gap = math.inf
    for k in range(5):
        zeros = [complex(*rng.uniform(-0.6, 0.6, 2)) for _ in range(k + 1)]
        r = blaschke_realization(zeros[0])
        for a in zeros[1:]:
            r = cascade(r, blaschke_realization(a))
        s0 = r.taylor(60)
        norms.append(multiplier_norm(s0, 60))
        for _ in range(2):
            z, w = complex(*rng.uniform(-1, 1, 2)), complex(*rng.uniform(-1, 1, 2))
            kernel_err = max(kernel_err, abs(ks_kernel(r, z, w) - ks_kernel_via_multiplier(s0, z, w)))
        ws = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
        cs = rng.normal(size=3) + 1j * rng.normal(size=3)
        lhs, rhs = hs_inequality(r, ws, cs)
        ineq_gap = min(ineq_gap, rhs - lhs)
    rz = CoisometryRealization([[0]], [1], [1], 0)
    zs = [complex(*rng.uniform(-2, 2, 2)) for _ in range(10)]
    ident_err = max(abs(coisometry_realize_eval(rz, z) - z) for z in zs)
    ok = (max(norms) <= 1 + 1e-8 and kernel_err <= 1e-8 and ident_err <= 1e-12
          and ineq_gap >= -1e-8)
    return ok, (f"max multiplier norm {max(norms):.12f}, kernel route error {kernel_err:.2e}, "
                f"s(z)=z error {ident_err:.2e}, H(s) slack {ineq_gap:.2e}")


def _c13(quick: bool, seed: int):
    t0 = time.perf_counter()
    ratios = [bessel_norm_check(n) for n in range(7)]
    dt = time.perf_counter() - t0
    worst = max(abs(r - 1) for r in ratios)
    return worst <= 0.005 and dt < 30, f"max |ratio - 1| = {worst:.2e} for n<=6, {dt:.1f}s"


def _c14(quick: bool, seed: int):
    N = 32
    A = matrix_of("A_reZ", N)
    tridiagonal = A.band == (1, 1)
    linear = all(A[n, n] == n for n in range(N)) and all(
        A[n + 1, n] == GaussianRational(n + 1, 0) / 2 for n in range(N - 1))
    shifts = shift_relations(N)
    ok = tridiagonal and linear and all(shifts.values())
    return ok, ("infinite-dimensional statements out of scope; finite proxies: A tridiagonal="
                f"{tridiagonal}, linear growth={linear}, shift relations={all(shifts.values())}")


CHECKS: List[Tuple[int, str, Callable[[bool, int], Tuple[bool, str]]]] = [
    (1, "dual construction of zeta_n", _c1),
    (2, "discrete analyticity", _c2),
    (3, "recurrences", _c3),
    (4, "growth rate", _c4),
    (5, "Fourier round trips", _c5),
    (6, "C-K product", _c6),
    (7, "C-K quotient", _c7),
    (8, "realization decay", _c8),
    (9, "Lie algebra identities", _c9),
    (10, "delta_y series", _c10),
    (11, "kernels", _c11),
    (12, "Schur suite", _c12),
    (13, "Bessel quadrature", _c13),
    (14, "finite proxies for infinite-dimensional results", _c14),
]


def run_checks(quick: bool = False, seed: int = 0, only=None) -> List[CheckResult]:
    out = []
    for number, title, fn in CHECKS:
        if only and number not in only:
            continue
        t0 = time.perf_counter()
        try:
            passed, detail = fn(quick, seed)
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"error: {type(exc).__name__}: {exc}"
        out.append(CheckResult(number, title, passed, detail, time.perf_counter() - t0))
    return out
