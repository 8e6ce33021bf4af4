import json

import pytest

from qmatrix.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dcb_command(capsys):
    code, out, _ = run(capsys, "dcb", "--shape", "2x2", "--index", "1,0;0,1")
    assert code == 0
    assert out.strip() == "Z[1,1] Z[2,2] - q^2 * Z[1,2] Z[2,1]"


def test_lines_command(capsys):
    code, out, _ = run(capsys, "lines", "--shape", "3x3", "--enumerate")
    assert code == 0 and out.strip().endswith("count: 6")
    code, out, _ = run(capsys, "lines", "--shape", "2x2", "--line", "(1,2)->(2,2)->(2,1)", "--json")
    assert json.loads(out)["family"]["1,1"] == "xi[1,2|1,2]"


def test_verify_mset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "mset", "--shape", "3x3")
    assert code == 0 and "PASS mset 3x3" in out


def test_verify_reports_failure_with_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dcb", "--shape", "3x3", "--max-sum", "1")
    assert code == 1
    assert "det-product-normalized" in out


def test_config_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--shape", "7x2")[0] == 2
    assert run(capsys, "verify", "--shape", "2x2", "--suite", "nope")[0] == 2
    assert run(capsys, "dcb", "--shape", "2x2", "--index", "1,0")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nshape = 2x2\nsuite = lines, cluster\nseed = 3\n")
    out_path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--config", str(cfg), "--shape", "2x3", "--out", str(out_path))
    assert code == 0
    rep = json.loads(out_path.read_text())
    assert rep["shape"] == [2, 3] and set(rep["suites"]) == {"lines", "cluster"} and rep["seed"] == 3


def test_reports_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "verify", "--shape", "2x2", "--seed", "5", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert "seconds" not in a.read_text()
    t = tmp_path / "t.json"
    run(capsys, "verify", "--shape", "2x2", "--suite", "lines", "--timings", "--out", str(t))
    assert "seconds" in json.loads(t.read_text())["suites"]["lines"]


def test_seed_mutate_round_trip(capsys, tmp_path):
    path = tmp_path / "seed.json"
    assert run(capsys, "seed", "--shape", "2x2", "--json", "--out", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert data["ex"] == [0] and data["variables"][0]["minor"] == {"rows": [1], "cols": [1]}
    code, out, _ = run(capsys, "mutate", "--input", str(path), "--k", "0",
                       "--target-rows", "2", "--target-cols", "2", "--json")
    assert code == 0
    assert json.loads(out)["variables"][0]["minor"] == {"rows": [2], "cols": [2]}
    code, _, err = run(capsys, "mutate", "--input", str(path), "--k", "0",
                       "--target-rows", "1", "--target-cols", "2")
    assert code == 1 and "PredictionMismatch" in err
    assert run(capsys, "mutate", "--input", str(tmp_path / "missing.json"), "--k", "0")[0] == 2


def test_line_mutate_build_data_diamond(capsys):
    code, out, _ = run(capsys, "line-mutate", "--shape", "3x3", "--line", "(1,3)->(1,1)->(3,1)",
                       "--target", "(1,3)->(1,2)->(2,2)->(2,1)->(3,1)")
    assert code == 0 and out.startswith("xi[1|1] -> xi[2|2]\nxi[1,2|1,2] -> xi[2,3|2,3]")
    code, out, _ = run(capsys, "line-mutate", "--shape", "3x3", "--line", "(1,3)->(1,1)->(3,1)",
                       "--target", "(1,3)->(3,3)->(3,1)")
    assert code == 2
    code, out, _ = run(capsys, "build-data", "--shape", "3x4", "--line", "minus", "--json")
    assert code == 0 and json.loads(out)["mutable_minus"] == [] and all(r == [] for r in json.loads(out)["b0"])
    code, out, _ = run(capsys, "diamond", "--shape", "3x4")
    assert code == 0 and "3 diamond(s)" in out


def test_reach_and_covariance(capsys):
    code, out, _ = run(capsys, "reach", "--shape", "3x3", "--rows", "2,3", "--cols", "2,3")
    assert code == 0 and out.count("->") >= 1
    code, out, _ = run(capsys, "covariance", "--shape", "3x3", "--size", "2")
    assert code == 0 and out.startswith("+ 0 0")


@pytest.mark.parametrize("cmd", [["minor", "--shape", "2x3", "--rows", "1,2", "--cols", "1,3"],
                                 ["expand", "--shape", "2x2", "--index", "1,0;0,1"]])
def test_other_commands(capsys, cmd):
    code, out, _ = run(capsys, *cmd)
    assert code == 0 and out.strip()
