import io
import json
import subprocess
import sys

import pytest

from fedosov.cli import main

STD = [["0", "1"], ["-1", "0"]]


def spec(tmp_path, name="p.json", **kw):
    obj = {"dimension": 2, "poisson": STD}
    obj.update(kw)
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate_ok(tmp_path):
    code, out, _ = run("validate", spec(tmp_path))
    assert code == 0
    assert out == "structure: ok\nconnection: ok\n"


def test_validate_no_inverse(tmp_path):
    path = spec(tmp_path, poisson=[["0", "x1"], ["-x1", "0"]])
    code, out, _ = run("validate", path)
    assert code == 1
    assert out.startswith("structure: FAIL (no polynomial inverse")


def test_validate_notes_symmetrization(tmp_path):
    code, out, _ = run("validate", spec(tmp_path, christoffel={"1,2,1": "x1"}), "--output", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["connection"] == "ok"
    assert rep["notes"] == ["christoffel 1,2,1 symmetrized over 1,1,2 1,2,1 2,1,1"]


def test_star_golden(tmp_path):
    path = spec(tmp_path)
    code, out, _ = run("star", path, "--u", "x1", "--v", "x2", "--order", "1")
    assert code == 0
    assert out == '[{"h":0,"coeff":"x1*x2"},{"h":1,"coeff":"1/2"}]\nx1*x2 + (1/2)*h\n'
    _, out, _ = run("star", path, "--u", "1", "--v", "x1^2 - x2", "--output", "json")
    assert out == '[{"h":0,"coeff":"x1^2 - x2"}]\n'
    _, out, _ = run("star", path, "--u", "x1", "--v", "x2", "--order", "0", "--output", "json")
    assert out == '[{"h":0,"coeff":"x1*x2"}]\n'


def test_star_curved_golden(tmp_path):
    path = spec(tmp_path, christoffel={"1,1,1": "x2", "1,1,2": "x1"})
    _, out, _ = run("star", path, "--u", "x1^2", "--v", "x2^2", "--order", "2", "--output", "json")
    assert json.loads(out) == [{"h": 0, "coeff": "x1^2*x2^2"}, {"h": 1, "coeff": "2*x1*x2"},
                               {"h": 2, "coeff": "-1/2*x1^2 + 1/2"}]


def test_flat_curvature_and_gamma_are_zero(tmp_path):
    path = spec(tmp_path)
    assert run("curvature", path)[1] == "[]\n"
    assert run("gamma", path)[1] == "[]\n"


def test_curvature_records(tmp_path):
    _, out, _ = run("curvature", spec(tmp_path, christoffel={"1,1,1": "x2"}))
    assert json.loads(out) == [{"h": 0, "y": [0, 2], "dx": [1, 2], "coeff": "-1/2"}]


def test_check_flatness(tmp_path):
    code, out, _ = run("check", spec(tmp_path, christoffel={"1,1,1": "1"}, truncation=8), "--suite", "flatness")
    assert code == 0
    assert "β = 0 up to degree 8: pass" in out


def test_check_json(tmp_path):
    code, out, _ = run("check", spec(tmp_path, christoffel={"1,1,1": "x2"}), "--suite", "d2", "--output", "json")
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == 0 and rep["passed"] == 2


def test_deterministic(tmp_path):
    path = spec(tmp_path, christoffel={"1,1,1": "x2"})
    args = ("gamma", path)
    assert run(*args)[1] == run(*args)[1]
    args = ("star", path, "--u", "x1^2 + x2", "--v", "x1*x2", "--order", "2")
    assert run(*args)[1] == run(*args)[1]


@pytest.mark.parametrize("argv,code,kind", [
    (["star", "{p}", "--u", "x3", "--v", "x1"], 2, "parse"),
    (["star", "{p}", "--u", "x1"], 2, "usage"),
    (["bogus"], 2, "usage"),
    (["validate", "/nonexistent/spec.json"], 2, "io"),
    (["check", "{p}", "--suite", "nope"], 2, "usage"),
    (["gamma", "{bad}"], 1, "validation"),
])
def test_error_paths(tmp_path, argv, code, kind):
    p = spec(tmp_path)
    bad = spec(tmp_path, "bad.json", poisson=[["0", "x1"], ["-x1", "0"]])
    argv = [a.format(p=p, bad=bad) for a in argv]
    got, out, err = run(*argv)
    assert got == code
    assert err.startswith(f"error[{kind}]: ")
    assert err.count("\n") == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "fedosov", "star", spec(tmp_path), "--u", "x1", "--v", "x2",
                          "--order", "1", "--output", "text"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "x1*x2 + (1/2)*h\n"
