"""Command-line interface: ``discrete-analytic <command> [options]``.

Exit status is 0 on success, 1 when a mathematical precondition or check
fails, and 2 for unreadable input or bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from .basis import (
    CoefficientSeries,
    CompatibilityError,
    fourier_1d,
    fourier_2d,
    inverse_fourier_1d,
)
from .gaussian import GaussianRational
from .lattice import LatticeFunction, Window, WindowError, is_discrete_analytic
from .operators import (
    IDENTITIES,
    bracket_check,
    commutator_A_check,
    kernel_gram,
    matrix_of,
    random_lattice_functions,
)
from .polynomial import ExactPolynomial1
from .products import (
    ExpandableFunction,
    PreconditionError,
    boxdot_product,
    ck_product,
    ck_quotient,
)
from .realization import Realization, eval_realization, fourier_decay_check, realize_from_poles
from .schur import CoisometryRealization, bessel_norm_check, ks_kernel, ks_kernel_via_multiplier
from .verification import run_checks
from .zeta import ZetaTable, extend_factorial, zeta_by_extension, zeta_by_taylor

EXIT_OK, EXIT_MATH, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    """Bad flags or unreadable input."""


# -- io helpers -----------------------------------------------------------------------------

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {n}")
    return n


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


def _pair(v) -> list:
    c = complex(v)
    return [float(c.real) + 0.0, float(c.imag) + 0.0]  # no -0.0 in output


def _value(v, as_float: bool):
    if as_float:
        return _pair(v)
    return str(v)


def _parse_list(text: str) -> List[GaussianRational]:
    try:
        return [GaussianRational.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _load_expandable(path: str) -> ExpandableFunction:
    obj = _read_json(path)
    try:
        return ExpandableFunction.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: not a coefficient series: {exc}") from exc


def _series_out(args, f: ExpandableFunction) -> str:
    out = f.to_json()
    if args.float:
        out["coeffs"] = [_value(c, True) for c in f.coeffs.coeffs]
        out["precision"] = "float64"
    return _dump(out)


# -- zeta tables -------------------------------------------------------------------------------

def _cache_path(method: str, N: int, w: Window) -> Optional[Path]:
    root = os.environ.get("ZETA_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"zeta_{method}_{N}_{w.x_min}_{w.x_max}_{w.y_min}_{w.y_max}.json"


def load_table(N: int, w: Window, method: str = "extension", threads: int = 1) -> ZetaTable:
    """Build a table, going through ``$ZETA_CACHE_DIR`` when it is set."""
    path = _cache_path(method, N, w)
    if path is not None and path.exists():
        rows = json.loads(path.read_text())["rows"]
        values = {(n, x, y): GaussianRational.parse(v) for n, x, y, v in rows}
        return ZetaTable(N, w, values)
    zt = zeta_by_extension(N, w, threads) if method == "extension" else zeta_by_taylor(N, w)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        rows = [[n, x, y, str(v)] for n, x, y, v in zt.rows()]
        path.write_text(json.dumps({"rows": rows}))
    return zt


def cmd_zeta(args) -> int:
    w = Window.parse(args.window)
    zt = load_table(args.max_n, w, args.method, args.threads)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "x", "y", "re", "im"])
        for n, x, y, v in zt.rows():
            if args.float:
                c = complex(v)
                writer.writerow([n, x, y, repr(c.real + 0.0), repr(c.imag + 0.0)])
            else:
                writer.writerow([n, x, y, str(v.re), str(v.im)])
        _emit(args, buf.getvalue())
    else:
        out = {"max_degree": zt.max_degree, "window": w.to_json(), "exact": not args.float}
        if args.float:
            out["precision"] = "float64"
        out["rows"] = [{"n": n, "x": x, "y": y, "value": _value(v, args.float)}
                       for n, x, y, v in zt.rows()]
        _emit(args, _dump(out))
    return EXIT_OK


def cmd_extend(args) -> int:
    if args.poly is not None:
        p = ExactPolynomial1(_parse_list(args.poly))
        c = fourier_1d([p(x) for x in range(max(p.degree, 0) + 1)])
    elif args.input:
        c = CoefficientSeries.from_json(_read_json(args.input))
        if c.basis != "factorial_x":
            raise ConfigError("extend expects a factorial_x series")
    else:
        raise ConfigError("give --poly or --input")
    q = extend_factorial(c)
    out = {"factorial": q.to_json(),
           "monomial": [[m, n, str(v)] for (m, n), v in sorted(q.to_polynomial().coefficients.items())]}
    if args.window:
        out["values"] = q.on_window(Window.parse(args.window)).to_json()
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_check_da(args) -> int:
    try:
        f = LatticeFunction.from_json(_read_json(args.input))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{args.input}: not a lattice function: {exc}") from exc
    rep = is_discrete_analytic(f)
    out = {"is_analytic": rep.is_analytic}
    if not rep:
        out["point"] = list(rep.point)
        out["residual"] = str(rep.residual)
    _emit(args, _dump(out))
    return EXIT_OK if rep else EXIT_MATH


def cmd_fourier(args) -> int:
    if args.two_d:
        f = LatticeFunction.from_json(_read_json(args.input))
        _emit(args, _dump(fourier_2d(f).to_json()))
        return EXIT_OK
    if args.inverse:
        c = CoefficientSeries.from_json(_read_json(args.input))
        n = args.n if args.n is not None else max(c.degree, 0)
        vals = [inverse_fourier_1d(c, x) for x in range(n + 1)]
        _emit(args, _dump({"values": [_value(v, args.float) for v in vals]}))
        return EXIT_OK
    if args.values is not None:
        vals = _parse_list(args.values)
    elif args.input:
        obj = _read_json(args.input)
        raw = obj["values"] if isinstance(obj, dict) else obj
        vals = [GaussianRational.from_json(v) for v in raw]
    else:
        raise ConfigError("give --values or --input")
    c = fourier_1d(vals)
    out = c.to_json()
    if args.float:
        out["coeffs"] = [_value(v, True) for v in c.coeffs]
        out["precision"] = "float64"
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_ck_mul(args) -> int:
    f, g = _load_expandable(args.left), _load_expandable(args.right)
    _emit(args, _series_out(args, ck_product(f, g, args.degree)))
    return EXIT_OK


def cmd_ck_div(args) -> int:
    p, q = _load_expandable(args.num), _load_expandable(args.den)
    _emit(args, _series_out(args, ck_quotient(p, q, args.n)))
    return EXIT_OK


def cmd_boxdot(args) -> int:
    f, g = _load_expandable(args.left), _load_expandable(args.right)
    _emit(args, _series_out(args, boxdot_product(f, g)))
    return EXIT_OK


def cmd_realize(args) -> int:
    if args.input:
        try:
            r = Realization.from_json(_read_json(args.input))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{args.input}: not a realization: {exc}") from exc
    elif args.poles is not None:
        poles = []
        for item in args.poles.split(","):
            if not item.strip():
                continue
            lam, _, res = item.partition(":")
            try:
                poles.append((GaussianRational.parse(lam), GaussianRational.parse(res or "1")))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        poly = ExactPolynomial1(_parse_list(args.poly)) if args.poly else None
        r = realize_from_poles(poles, poly)
    else:
        raise ConfigError("give --input or --poles")
    r.check_spectrum()
    values = [eval_realization(r, x) for x in range(args.n + 1)]
    out = {"realization": r.to_json(),
           "values": [_value(v, args.float or not r.exact) for v in values],
           "decay_proxy": fourier_decay_check(r, args.n)}
    if r.exact:
        c = fourier_1d(values)
        out["fourier"] = CoefficientSeries(c.coeffs, "zeta").to_json()
    _emit(args, _dump(out))
    return EXIT_OK


def _points(path: str):
    obj = _read_json(path)
    raw = obj["points"] if isinstance(obj, dict) else obj
    try:
        return [tuple(p) for p in raw]
    except TypeError as exc:
        raise ConfigError(f"{path}: points must be pairs") from exc


def cmd_kernel(args) -> int:
    pts = [(int(x), int(y)) for x, y in _points(args.points)]
    if not pts:
        raise ConfigError("no points given")
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    w = Window(min(xs + [0]), max(xs + [0]), min(ys + [0]), max(ys + [0]))
    zt = load_table(args.n, w, threads=args.threads)
    km = kernel_gram(pts, zt, args.n)
    if args.format == "csv":
        _emit(args, km.to_csv())
    else:
        _emit(args, _dump({"points": [list(p) for p in pts], "N": args.n, "precision": "float64",
                           "gram": [[_pair(v) for v in row] for row in km.gram],
                           "min_eigenvalue": km.min_eigenvalue}))
    return EXIT_OK


def cmd_matrix(args) -> int:
    try:
        m = matrix_of(args.op, args.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.format == "csv":
        _emit(args, m.to_csv())
    else:
        _emit(args, _dump({"op": args.op, "N": args.n, "band": list(m.band),
                           "entries": [[_value(v, args.float) for v in row] for row in m.entries]}))
    return EXIT_OK


def cmd_brackets(args) -> int:
    fns = random_lattice_functions(args.count, Window(0, 7, -3, 4), args.seed)
    surprises = 0
    lines = []
    for ident in IDENTITIES:
        if args.mode == "matrix" and "dbar" in (ident.op1, ident.op2):
            continue
        rep = bracket_check(ident, args.mode, fns, N=args.n)
        tag = " (uncorrected form, expected to fail)" if not ident.expected else ""
        lines.append(rep.line() + tag)
        surprises += rep.passed != ident.expected
    comm = commutator_A_check(args.n)
    lines.append(f"{'PASS' if comm.uncorrected_passed else 'FAIL'} [matrix] [delta_x,A] = (I+dx+dx^2)/2"
                 " (uncorrected form, expected to fail)")
    lines.append(f"{'PASS' if comm.corrected_passed else 'FAIL'} [matrix] [delta_x,A] = (I+dx)^2/2")
    surprises += comm.uncorrected_passed + (not comm.corrected_passed)
    _emit(args, "\n".join(lines))
    return EXIT_OK if surprises == 0 else EXIT_MATH


def cmd_schur_kernel(args) -> int:
    try:
        r = CoisometryRealization.from_json(_read_json(args.realization))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{args.realization}: not a realization: {exc}") from exc
    pts = [complex(*p) if isinstance(p, (list, tuple)) else complex(p)
           for p in _points(args.points)]
    gram = np.array([[ks_kernel(r, z, w) for w in pts] for z in pts])
    s0 = r.taylor(args.n)
    route = np.array([[ks_kernel_via_multiplier(s0, z, w, args.n) for w in pts] for z in pts])
    out = {"precision": "float64",
           "coisometry_defect": r.coisometry_defect(),
           "gram": [[_pair(v) for v in row] for row in gram],
           "multiplier_route_error": float(np.max(np.abs(gram - route), initial=0.0)),
           "min_eigenvalue": float(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min())}
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_norm_check(args) -> int:
    ratios = [bessel_norm_check(k, args.resolution) for k in range(args.n + 1)]
    ok = all(abs(r - 1) <= 0.005 for r in ratios)
    _emit(args, _dump({"ratios": ratios, "within_half_percent": ok}))
    return EXIT_OK if ok else EXIT_MATH


def cmd_verify_all(args) -> int:
    results = run_checks(args.quick, args.seed)
    _emit(args, "\n".join(r.line() for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_MATH


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--float", action="store_true", help="emit floats instead of exact strings")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-o", "--output", help="write to a file instead of stdout")

    parser = argparse.ArgumentParser(prog="discrete-analytic",
                                     description="Discrete analytic functions on Z^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("zeta", cmd_zeta, "table of zeta_n on a window")
    p.add_argument("--max-n", type=_count, required=True)
    p.add_argument("--window", default="0:4,0:4", help="x0:x1,y0:y1")
    p.add_argument("--method", choices=("extension", "taylor"), default="extension")

    p = add("extend", cmd_extend, "discrete analytic extension of a polynomial")
    p.add_argument("--poly", help="monomial coefficients c0,c1,... (Gaussian rational strings)")
    p.add_argument("--input", help="factorial_x series JSON")
    p.add_argument("--window", help="also tabulate the extension on x0:x1,y0:y1")

    p = add("check-da", cmd_check_da, "test a lattice-function file for discrete analyticity")
    p.add_argument("--input", required=True)

    p = add("fourier", cmd_fourier, "factorial-basis transform")
    p.add_argument("--values", help="comma-separated f(0),f(1),...")
    p.add_argument("--input", help="JSON list of values, a series (with --inverse) or a lattice file (--2d)")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--2d", dest="two_d", action="store_true")
    p.add_argument("--n", type=_count, help="last x for --inverse")

    p = add("ck-mul", cmd_ck_mul, "Cauchy-Kovalevskaya product")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--degree", type=_count)

    p = add("ck-div", cmd_ck_div, "Cauchy-Kovalevskaya quotient")
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)
    p.add_argument("--n", type=_count, default=20)

    p = add("boxdot", cmd_boxdot, "boxdot product")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("realize", cmd_realize, "evaluate a rational function from its realization")
    p.add_argument("--input")
    p.add_argument("--poles", help="lambda:residue,... e.g. -1:1,-2:-1")
    p.add_argument("--poly", help="polynomial part c0,c1,...")
    p.add_argument("--n", type=_count, default=20)

    p = add("kernel", cmd_kernel, "Gram matrix of the H_DA kernel")
    p.add_argument("--points", required=True, help="JSON list of [x, y]")
    p.add_argument("--n", type=_count, default=30)

    p = add("matrix", cmd_matrix, "truncated operator matrix")
    p.add_argument("--op", required=True, choices=("delta_x", "delta_y", "Z", "Z_adj", "A_reZ"))
    p.add_argument("--n", type=_count, default=16)

    p = add("brackets", cmd_brackets, "commutator identities")
    p.add_argument("--mode", choices=("lattice", "matrix"), default="lattice")
    p.add_argument("--count", type=_count, default=20)
    p.add_argument("--n", type=_count, default=16)

    p = add("schur-kernel", cmd_schur_kernel, "de Branges-Rovnyak kernel from a realization")
    p.add_argument("--realization", required=True)
    p.add_argument("--points", required=True, help="JSON list of [re, im]")
    p.add_argument("--n", type=_count, default=64)

    p = add("norm-check", cmd_norm_check, "Bessel-weight norms of monomials")
    p.add_argument("--n", type=_count, default=6)
    p.add_argument("--resolution", type=_count, default=200)

    p = add("verify-all", cmd_verify_all, "run every acceptance check")
    p.add_argument("--quick", action="store_true")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError, CompatibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (ConfigError, WindowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (KeyError, ValueError, TypeError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
