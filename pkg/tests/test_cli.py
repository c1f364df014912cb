import json
import subprocess
import sys

from marked_shapes.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_object, main
from marked_shapes.complexes import Complex, find_isomorphism


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_n_bijection(capsys):
    code, out, _ = run(capsys, "verify", "N-bijection", "--n", "4")
    assert code == EXIT_OK and "pass" in out


def test_marked_query(capsys):
    code, out, _ = run(capsys, "marked", "T-comical-cube 3 2 0", "122@3")
    assert code == EXIT_OK
    assert "unmarked" in out and "complete substring" in out
    code, out, _ = run(capsys, "marked", "--json", "adelta 2 1", "012")
    assert json.loads(out)["marked"] is True


def test_build_round_trips_through_json(capsys):
    for desc in ("Delta3eq", "L", "comical 2 1 0", "cone 1 2"):
        code, out, _ = run(capsys, "build", desc)
        assert code == EXIT_OK
        data = json.loads(out)
        Y = Complex.from_json(data)
        assert find_isomorphism(Y, build_object(desc)) is not None
        assert json.dumps(Y.to_json(), sort_keys=True) == json.dumps(
            {k: v for k, v in data.items() if k not in ("name", "counts")}, sort_keys=True
        )


def test_build_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "build", "Xi 3 2")
    _, b, _ = run(capsys, "build", "Xi 3 2")
    assert a == b


def test_rezk_via_cli(capsys):
    assert run(capsys, "build", "Delta3eq")[0] == EXIT_OK
    assert run(capsys, "build", "L")[0] == EXIT_OK
    assert run(capsys, "verify", "rezk_pushout")[0] == EXIT_OK


def test_cubify_and_tri(capsys):
    code, out, _ = run(capsys, "cubify", "Delta 2")
    assert code == EXIT_OK and json.loads(out)["counts"] == {"0": 3, "1": 3, "2": 1}
    code, out, _ = run(capsys, "tri", "cube 2")
    assert code == EXIT_OK and json.loads(out)["counts"] == {"0": 4, "1": 5, "2": 2}


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", "nonsense")[0] == EXIT_USAGE
    assert run(capsys, "build", "cube")[0] == EXIT_USAGE
    assert run(capsys, "build", "frobnicate 2")[0] == EXIT_USAGE
    assert run(capsys, "build", "--budget-cells", "5", "cube 3")[0] == EXIT_BUDGET
    assert run(capsys, "verify", "H-claim", "--n", "2")[0] == EXIT_FAIL
    target = tmp_path / "out.json"
    assert run(capsys, "verify", "--json", "--out", str(target), "Q_triv", "--n", "2")[0] == EXIT_OK
    assert json.loads(target.read_text())["passed"]


def test_argparse_errors_exit_two():
    proc = subprocess.run([sys.executable, "-m", "marked_shapes", "suite", "--profile", "huge"], capture_output=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "marked_shapes", "build", "--budget-cells", "0", "L"], capture_output=True)
    assert proc.returncode == 2
