import json
import subprocess
import sys
from pathlib import Path

import pytest

from ctrec.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def spec_file(tmp_path):
    def write(R, **extra):
        path = tmp_path / f"spec{len(list(tmp_path.iterdir()))}.json"
        path.write_text(json.dumps({"n": len(R), "R": R, **extra}))
        return str(path)

    return write


@pytest.mark.parametrize(
    "expr, vars_, expected",
    [
        ("(1 - x1/x2)*(1 - x2/x1)", "x1,x2", "2"),
        ("x1", "x1", "0"),
        ("(1 - x2/x1)^2*(1 - x1/x2)", "x1,x2", "3"),
        ("1/2 + x1", "x1", "1/2"),
    ],
)
def test_ct(capsys, expr, vars_, expected):
    code, out, _ = run(capsys, "ct", "--vars", vars_, expr)
    assert code == 0 and out.strip() == expected


def test_ct_json_matches_text(capsys):
    _, text, _ = run(capsys, "ct", "--vars", "x1,x2", "(1 - x2/x1)^2*(1 - x1/x2)")
    _, js, _ = run(capsys, "ct", "--vars", "x1,x2", "(1 - x2/x1)^2*(1 - x1/x2)", "--json")
    assert json.loads(js)["constant_term"] == f"{text.strip()}/1"


def test_ct_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "ct", "--vars", "x1", "1 + y")
    assert code == 2 and "undeclared variable y" in err


def test_ct_exponent_errors(capsys):
    # literal above the parse bound is an input error
    assert run(capsys, "ct", "--vars", "x1", "x1^100000")[0] == 2
    # 10^12 does not fit in 32 bits
    code, _, err = run(capsys, "ct", "--vars", "x1", "((x1^10000)^10000)^10000")
    assert code == 3 and "resource limit" in err


def test_dyson_all(capsys):
    code, out, _ = run(capsys, "dyson", "--n", "3", "--a", "1,1,1", "--method", "all")
    assert code == 0
    assert out.strip() == "a=(1,1,1) brute=6 recursive=6 multinomial=6 OK"


def test_dyson_single_methods(capsys):
    for method, label in [("brute", "brute"), ("recursive", "recursive"), ("formula", "multinomial")]:
        code, out, _ = run(capsys, "dyson", "--n", "2", "--a", "2,1", "--method", method)
        assert code == 0 and out.strip() == f"a=(2,1) {label}=3"


def test_dyson_amax(capsys):
    code, out, _ = run(capsys, "dyson", "--n", "1", "--amax", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert all("multinomial=1 OK" in l for l in lines[:-1])
    assert lines[-1] == "5 instances OK"
    code, out, _ = run(capsys, "dyson", "--n", "2", "--amax", "3", "--method", "all")
    assert code == 0 and out.strip().splitlines()[-1] == "16 instances OK"


def test_dyson_json(capsys):
    code, out, _ = run(capsys, "dyson", "--n", "2", "--amax", "2", "--json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["instances"] == 9
    row = next(r for r in d["rows"] if r["a"] == [2, 2])
    assert row["brute"] == row["recursive"] == row["multinomial"] == "6"


def test_dyson_input_errors(capsys):
    assert run(capsys, "dyson", "--n", "2", "--a", "1")[0] == 2
    assert run(capsys, "dyson", "--n", "2", "--a", "1,x")[0] == 2
    assert run(capsys, "dyson", "--n", "2")[0] == 2


def test_dyson_resource_exit_3(capsys):
    code, _, err = run(capsys, "dyson", "--n", "3", "--a", "3,3,3", "--method", "brute", "--max-terms", "5")
    assert code == 3 and "resource limit" in err


@pytest.mark.parametrize("n", [1, 2, 5])
def test_lagrange(capsys, n):
    code, out, _ = run(capsys, "lagrange", "--n", str(n))
    assert code == 0 and out.strip() == f"identity holds (n={n})"


def test_lagrange_json(capsys):
    code, out, _ = run(capsys, "lagrange", "--n", "3", "--json")
    assert code == 0 and json.loads(out) == {"n": 3, "holds": True}


def test_annihilate_dyson_two(capsys, tmp_path):
    cert = tmp_path / "c2.json"
    code, out, _ = run(capsys, "annihilate", str(DATA / "dyson2.json"), "--grid", "3", "--out", str(cert))
    assert code == 0
    assert "operator: A1*A2 - A1 - A2" in out
    assert "good form: 1 - A1^-1 - A2^-1" in out
    assert "grid 3: verified at 16 points, all residuals 0" in out
    d = json.loads(cert.read_text())
    assert d["grid_bound"] == 3 and len(d["residuals"]) == 16


def test_annihilate_constant_spec(capsys):
    code, out, _ = run(capsys, "annihilate", str(DATA / "constant2.json"))
    assert code == 0 and "elimination basis: A2 - 1; A1 - 1" in out


def test_annihilate_dyson_three(capsys, tmp_path):
    code, out, _ = run(capsys, "annihilate", str(DATA / "dyson3.json"), "--grid", "2")
    assert code == 0
    assert "operator: A1*A2*A3 - A1*A2 - A1*A3 - A2*A3" in out
    assert "good form: 1 - A1^-1 - A2^-1 - A3^-1" in out


def test_annihilate_json_matches_text(capsys):
    _, text, _ = run(capsys, "annihilate", str(DATA / "dyson2.json"))
    _, js, _ = run(capsys, "annihilate", str(DATA / "dyson2.json"), "--json")
    d = json.loads(js)
    assert f"operator: {d['operator_text']}" in text
    assert f"good form: {d['good_form_text']}" in text
    assert d["status"] == "verified"


def test_annihilate_inconclusive_exit_4(capsys, spec_file):
    code, out, _ = run(capsys, "annihilate", spec_file(["3*x1^-2", "2*x1*x2"]))
    assert code == 4 and out.startswith("inconclusive")


def test_annihilate_resource_exit_3(capsys):
    code, _, err = run(capsys, "annihilate", str(DATA / "dyson3.json"), "--max-spairs", "2")
    assert code == 3 and "S-pair budget" in err


def test_annihilate_input_errors(capsys, spec_file, tmp_path):
    assert run(capsys, "annihilate", spec_file(["1 - x2/", "1"]))[0] == 2
    assert run(capsys, "annihilate", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "annihilate", spec_file(["1"] * 5))[0] == 2  # n above --max-n
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "R": ["1", "1"]}))
    assert run(capsys, "annihilate", str(bad))[0] == 2


def test_annihilate_dehomogenize_flag(capsys):
    code, out, _ = run(capsys, "annihilate", str(DATA / "dyson3.json"), "--dehomogenize", "--grid", "2")
    assert code == 0 and "operator: A1*A2*A3 - A1*A2 - A1*A3 - A2*A3" in out


@pytest.mark.parametrize("spec", ["dyson2.json", "dyson3.json", "constant2.json"])
def test_write_read_verify_round_trip(capsys, tmp_path, spec):
    cert = tmp_path / "cert.json"
    assert run(capsys, "annihilate", str(DATA / spec), "--grid", "2", "--out", str(cert))[0] == 0
    code, out, _ = run(capsys, "verify", str(cert), str(DATA / spec))
    assert code == 0 and "all residuals 0" in out


def test_verify_text_operators(capsys, tmp_path):
    spec = str(DATA / "dyson2.json")
    good = tmp_path / "good.txt"
    good.write_text("1 - A1^-1 - A2^-1\n")
    assert run(capsys, "verify", str(good), spec, "--grid", "3")[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("A1 - 1")
    code, out, _ = run(capsys, "verify", str(bad), spec, "--grid", "3")
    assert code == 1 and "FAIL at a=(0,1) residual=1" in out
    ident = tmp_path / "one.txt"
    ident.write_text("1")
    code, out, _ = run(capsys, "verify", str(ident), spec)
    assert code == 1 and "FAIL at a=(0,0) residual=1" in out


def test_verify_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "operator": [{"shift": [1, 0], "coeff": "1/1"}, {"shift": [0, 0], "coeff": "-1/1"}]}))
    code, out, _ = run(capsys, "verify", str(bad), str(DATA / "dyson2.json"), "--json")
    d = json.loads(out)
    assert code == 1 and d["first_failure"] == {"a": [0, 1], "value": "1/1"}


def test_verify_grid_too_small(capsys, tmp_path):
    f = tmp_path / "op.txt"
    f.write_text("A1^3 - 1")
    assert run(capsys, "verify", str(f), str(DATA / "dyson2.json"), "--grid", "2")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ctrec.cli", "lagrange", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "identity holds (n=2)"


def test_deterministic_certificates(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "annihilate", str(DATA / "dyson2.json"), "--out", str(a))
    run(capsys, "annihilate", str(DATA / "dyson2.json"), "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
