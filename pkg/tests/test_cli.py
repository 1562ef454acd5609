import json
import subprocess
import sys

import pytest

from discrete_analytic import GaussianRational, LatticeFunction, Window
from discrete_analytic.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def power_file(tmp_path, k):
    f = LatticeFunction.from_callable(lambda x, y: GaussianRational(x, y) ** k, Window(0, 3, 0, 3))
    return write(tmp_path, f"z{k}.json", f.to_json())


def test_zeta_degree_zero_is_ones(capsys):
    code, out, _ = run(capsys, "zeta", "--max-n", "0", "--window", "0:2,-1:1", "--format", "csv")
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "n,x,y,re,im"
    assert all(r.endswith(",1,0") for r in rows[1:]) and len(rows) == 10


def test_zeta_methods_agree_and_are_deterministic(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ZETA_CACHE_DIR", str(tmp_path / "cache"))
    outs = [run(capsys, "zeta", "--max-n", "6", "--window", "0:3,-2:2", "--method", m)[1]
            for m in ("extension", "taylor", "extension")]
    assert outs[0] == outs[1] == outs[2]
    assert list((tmp_path / "cache").iterdir())


def test_zeta_float_output_carries_precision(capsys):
    _, out, _ = run(capsys, "zeta", "--max-n", "1", "--window", "0:1,0:1", "--float")
    obj = json.loads(out)
    assert obj["precision"] == "float64" and obj["exact"] is False
    assert obj["rows"][-1]["value"] == [1.0, 1.0]


def test_check_da_on_cubic(capsys, tmp_path):
    code, out, _ = run(capsys, "check-da", "--input", power_file(tmp_path, 3))
    obj = json.loads(out)
    assert code == 1 and obj["point"] == [0, 0] and obj["residual"] == "-1+1*i"


def test_check_da_on_square(capsys, tmp_path):
    code, out, _ = run(capsys, "check-da", "--input", power_file(tmp_path, 2))
    assert code == 0 and json.loads(out)["is_analytic"] is True


def test_extend_and_fourier(capsys):
    code, out, _ = run(capsys, "extend", "--poly", "0,-1,1")
    assert code == 0
    code, out, _ = run(capsys, "fourier", "--values", "0,1,4,9,16")
    assert json.loads(out)["coeffs"] == ["0+0*i", "1+0*i", "1+0*i"]


def test_fourier_inverse(capsys, tmp_path):
    series = write(tmp_path, "s.json", {"basis": "factorial_x", "coeffs": ["0", "1", "1"]})
    code, out, _ = run(capsys, "fourier", "--inverse", "--input", series, "--n", "3")
    assert code == 0 and json.loads(out)["values"][3] == "9+0*i"


def test_products(capsys, tmp_path):
    z2 = write(tmp_path, "z2.json", {"basis": "zeta", "coeffs": ["0", "0", "1"]})
    _, out, _ = run(capsys, "ck-mul", "--left", z2, "--right", z2)
    assert json.loads(out)["coeffs"] == ["0+0*i", "0+0*i", "2+0*i", "4+0*i", "1+0*i"]
    z3 = write(tmp_path, "z3.json", {"basis": "zeta", "coeffs": ["0", "0", "0", "1"]})
    _, out, _ = run(capsys, "boxdot", "--left", z2, "--right", z3)
    assert json.loads(out)["coeffs"][-1] == "1/10+0*i"


def test_quotient_and_its_precondition(capsys, tmp_path):
    one = write(tmp_path, "one.json", {"basis": "zeta", "coeffs": ["1"]})
    q = write(tmp_path, "q.json", {"basis": "zeta", "coeffs": ["1", "1"]})
    z1 = write(tmp_path, "z1.json", {"basis": "zeta", "coeffs": ["0", "1"]})
    code, out, _ = run(capsys, "ck-div", "--num", one, "--den", q, "--n", "4")
    assert code == 0 and json.loads(out)["coeffs"][4] == "1/120+0*i"
    code, _, err = run(capsys, "ck-div", "--num", one, "--den", z1, "--n", "4")
    assert code == 1 and "x = 0" in err


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--poles=-1:1,-2:-1", "--n", "2")
    assert code == 0 and json.loads(out)["values"] == ["1/2+0*i", "1/6+0*i", "1/12+0*i"]
    code, _, _ = run(capsys, "realize", "--poles", "2:1", "--n", "2")
    assert code == 1


def test_kernel(capsys, tmp_path):
    pts = write(tmp_path, "pts.json", [[1, 0], [2, 0]])
    code, out, _ = run(capsys, "kernel", "--points", pts, "--n", "10")
    gram = json.loads(out)["gram"]
    assert code == 0 and gram[0][0] == [2.0, 0.0] and gram[1][0] == [3.0, 0.0]


def test_matrix_csv(capsys):
    _, out, _ = run(capsys, "matrix", "--op", "delta_x", "--n", "3", "--format", "csv")
    ones = [line for line in out.splitlines()[1:] if line.endswith(",1.0,0.0")]
    assert ones == ["0,1,1.0,0.0", "1,2,1.0,0.0"]


def test_brackets_report_expected_outcomes(capsys):
    code, out, _ = run(capsys, "brackets", "--count", "3")
    lines = out.strip().splitlines()
    assert code == 0
    assert all(("expected to fail" in line) == line.startswith("FAIL") for line in lines)


def test_schur_kernel(capsys, tmp_path):
    r = write(tmp_path, "r.json", {"A": [[[0, 0]]], "B": [[1, 0]], "C": [[1, 0]], "D": [0, 0]})
    pts = write(tmp_path, "p.json", [[0.5, 0.0], [0.0, -0.3]])
    code, out, _ = run(capsys, "schur-kernel", "--realization", r, "--points", pts)
    obj = json.loads(out)
    assert code == 0 and obj["gram"][0][1] == [1.0, 0.0]


def test_norm_check(capsys):
    code, out, _ = run(capsys, "norm-check", "--n", "1")
    assert code == 0 and json.loads(out)["within_half_percent"] is True


@pytest.mark.parametrize("argv", [
    ["check-da", "--input", "/nonexistent.json"],
    ["zeta", "--max-n", "2", "--window", "0:1"],
    ["zeta", "--max-n", "-1", "--window", "0:1,0:1"],
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check-da", "--input", str(bad))[0] == 2


def test_unknown_command_exits_2():
    proc = subprocess.run([sys.executable, "-m", "discrete_analytic.cli", "nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert run(capsys, "fourier", "--values", "1,2", "-o", str(target))[0] == 0
    assert json.loads(target.read_text())["coeffs"] == ["1+0*i", "1+0*i"]


def test_verify_all_exit_code_tracks_failures(capsys):
    code, out, _ = run(capsys, "verify-all", "--quick")
    lines = [line for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert len(lines) == 14
    failed = any(line.startswith("FAIL") for line in lines)
    assert code == (1 if failed else 0)
