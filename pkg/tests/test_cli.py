import json
import math

import numpy as np
import pytest

from conftest import run_cli
from semidirect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "so4c", "--trials", "5", "--seed", "1")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["suite"] == "so4c" and d["trials"] == 5


def test_verify_text_and_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "minkowski", "--trials", "3", "--format", "text")
    assert code == 0 and out.startswith("suite minkowski") and "all checks passed" in out
    code, out, _ = run(capsys, "verify", "group-axioms", "--trials", "3", "--tol", "1e-30")
    assert code == 1 and json.loads(out)["passed"] is False


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "no-such-suite"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    capsys.readouterr()
    code, _, err = run(capsys, "verify", "so4c", "--trials", "0")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "verify", "so4c", "--tol", "-1")
    assert code == 2


def test_lorentz(capsys):
    code, out, _ = run(capsys, "lorentz", "[[1,0],[0,1]]")
    d = json.loads(out)
    assert code == 0 and np.allclose(d["lorentz"], np.eye(4)) and d["metric_residual"] == 0
    code, out, _ = run(capsys, "lorentz", "--", "-sigma0")
    assert code == 0 and np.allclose(json.loads(out)["lorentz"], np.eye(4))
    e = math.exp(0.5)
    code, out, _ = run(capsys, "lorentz", f"[[{e!r}, 0], [0, {1 / e!r}]]")
    L = np.array(json.loads(out)["lorentz"])
    assert abs(L[0, 0] - math.cosh(1)) <= 1e-12 and abs(L[0, 3] - math.sinh(1)) <= 1e-12
    code, out, _ = run(capsys, "lorentz", "[[1,0],[0,1]]", "--format", "text")
    assert "metric residual" in out


def test_lorentz_rejects_bad_input(capsys):
    code, _, err = run(capsys, "lorentz", "[[2,0],[0,2]]")
    assert code == 2 and "determinant" in err
    code, _, err = run(capsys, "lorentz", "[[1,0],[0,1]")
    assert code == 2 and "position" in err and "expected" in err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "S[sigma1] * L[sigma3] @ sigma0")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "algebra"
    assert d["value"]["matrix"] == [[[1.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [-1.0, 0.0]]]
    code, out, _ = run(capsys, "eval", "D(0,sigma0)", "--format", "text")
    assert out.strip() == "D([[0.0+0.0i, 0.0+0.0i], [0.0+0.0i, 0.0+0.0i]], [[1.0+0.0i, 0.0+0.0i], [0.0+0.0i, 1.0+0.0i]])"
    code, out, _ = run(capsys, "eval", "T(0,sigma1,sigma1)^-1")
    d = json.loads(out)
    assert d["kind"] == "T" and d["value"]["L"] == d["value"]["R"] == [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]
    code, _, err = run(capsys, "eval", "S[sigma1] *")
    assert code == 2 and "position 11" in err
    code, _, err = run(capsys, "eval", "L[0]")
    assert code == 2


def test_transform(capsys):
    e = math.exp(0.5)
    elem = f"T(0, [[{e!r}, 0], [0, {1 / e!r}]], [[{1 / e!r}, 0], [0, {e!r}]])"
    code, out, _ = run(capsys, "transform", elem, "(1, 0, 0, 0)")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "spinor" and d["interval_preserved"]
    assert np.max(np.abs(np.array(d["output"]) - [math.cosh(1), 0, 0, math.sinh(1)])) <= 1e-9
    code, out, _ = run(capsys, "transform", "S[2*sigma0 + sigma3]", "(1, 2, 3, 4)", "--format", "text")
    assert out.splitlines()[0] == "(3.0, 2.0, 3.0, 5.0)"
    # a complex-rotation element of T~ acting on complex space-time
    code, out, _ = run(capsys, "transform", "T(sigma1, [[1, 1], [0, 1]], [[2, 0], [1i, 0.5]])", "(1, 2i, 0, 1)")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "T" and d["interval_preserved"]


def test_transform_input_errors(capsys):
    code, _, err = run(capsys, "transform", "T(0, 1, 1)", "(1i, 0, 0, 0)")
    assert code == 2 and "real" in err
    code, _, err = run(capsys, "transform", "sigma1", "(1, 0, 0, 0)")
    assert code == 2
    code, _, err = run(capsys, "transform", "T(0, 1, 1)", "(1, 0, 0)")
    assert code == 2


def test_reconstruct_random(capsys):
    code, out, _ = run(capsys, "reconstruct", "D", "--random", "8", "--seed", "3")
    d = json.loads(out)
    assert code == 0 and d["span_dimension"] == 4 and d["structure_deviation"] <= 1e-9
    code, out, _ = run(capsys, "reconstruct", "D", "--random", "8", "--sl2")
    assert code == 0 and json.loads(out)["span_dimension"] == 4
    code, out, _ = run(capsys, "reconstruct", "T", "--random", "20")
    assert code == 0 and json.loads(out)["span_dimension"] == 16
    code, out, _ = run(capsys, "reconstruct", "starD")
    d = json.loads(out)
    assert code == 0 and all(w["passed"] for w in d["witnesses"]) and len(d["witnesses"]) == 9
    code, _, err = run(capsys, "reconstruct", "D", "--random", "0")
    assert code == 2


def test_reconstruct_generator_file(capsys, tmp_path):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(["L[sigma0]", "L[sigma1]", "L[sigma2]", "L[sigma3]"]))
    code, out, _ = run(capsys, "reconstruct", "D", "--generators", str(path))
    assert code == 0 and json.loads(out)["span_dimension"] == 4
    eye = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    zero = [[0, 0], [0, 0]]
    path.write_text(json.dumps([{"type": "D", "B": zero, "L": eye}]))
    code, out, _ = run(capsys, "reconstruct", "D", "--generators", str(path))
    assert code == 1 and json.loads(out)["span_dimension"] == 1
    path.write_text(json.dumps(["L[sigma1]"]))
    code, out, _ = run(capsys, "reconstruct", "D", "--generators", str(path))
    assert code == 1 and json.loads(out)["closed"] is False
    path.write_text("not json")
    code, _, err = run(capsys, "reconstruct", "D", "--generators", str(path))
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "reconstruct", "D", "--generators", str(tmp_path / "missing.json"))
    assert code == 2
    path.write_text(json.dumps(["R[sigma1]"]))
    code, _, err = run(capsys, "reconstruct", "D", "--generators", str(path))
    assert code == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "restore-T", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["suite"] == "restore-T"


def test_module_entry_point():
    proc = run_cli("eval", "sigma1 * sigma2", "--format", "text")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "[[0.0+1.0i, 0.0+0.0i], [0.0+0.0i, 0.0-1.0i]]"
    proc = run_cli("lorentz", "[[3,0],[0,3]]")
    assert proc.returncode == 2 and proc.stderr.startswith("error:")
