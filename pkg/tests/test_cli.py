import csv
import json

import pytest

from slicelab.cli import main
from slicelab.io import EXTEND_HEADER, GRID_HEADER
from slicelab.quaternion import ImaginaryUnit, Quaternion, embed


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run_json(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, json.loads(out.read_text())


def strip_time(rep):
    return {k: v for k, v in rep.items() if k != "timestamp"}


def test_verify_single_suite(tmp_path):
    code, rep = run_json(["verify", "--suite", "algebra", "--seed", "3"], tmp_path)
    assert code == 0 and rep["passed"]
    assert rep["command"] == "verify" and rep["seed"] == 3
    assert set(rep["suites"]) == {"algebra"}
    assert all(c["status"] == "pass" for c in rep["suites"]["algebra"])


def test_verify_is_deterministic(tmp_path):
    _, a = run_json(["verify", "--suite", "algebra,branch", "--seed", "5"], tmp_path, "a.json")
    _, b = run_json(["verify", "--suite", "algebra,branch", "--seed", "5"], tmp_path, "b.json")
    assert strip_time(a) == strip_time(b)


def test_verify_threads_do_not_change_results(tmp_path, monkeypatch):
    _, a = run_json(["verify", "--suite", "algebra,branch,witness", "--seed", "1"], tmp_path, "a.json")
    monkeypatch.setenv("SLICELAB_THREADS", "3")
    _, b = run_json(["verify", "--suite", "algebra,branch,witness", "--seed", "1"], tmp_path, "b.json")
    assert strip_time(a) == strip_time(b)


def test_verify_bad_suite_exits_2(tmp_path, capsys):
    assert main(["verify", "--suite", "", "--out", str(tmp_path / "x.json")]) == 2
    assert main(["verify", "--suite", "nope", "--out", str(tmp_path / "x.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_json_reports_position(tmp_path, capsys):
    cfg = write(tmp_path, "bad.json", "{bad\n")
    assert main(["counterexample", "--config", cfg]) == 2
    err = capsys.readouterr().err
    assert "1:2" in err


def test_unwritable_output_exits_2(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["verify", "--suite", "algebra", "--out", str(blocker / "x.json")]) == 2


def test_output_directories_are_created(tmp_path):
    assert main(["verify", "--suite", "algebra", "--out", str(tmp_path / "a" / "b.json")]) == 0


def test_grid_rows(tmp_path):
    cfg = write(tmp_path, "g.json", {
        "set": {"type": "EllipseBook", "I": [1, 0, 0]},
        "grid": {"x": [-1.5, 1.5], "y": [0, 1.5], "nx": 10, "ny": 7},
        "n_units": 3,
    })
    out = tmp_path / "g.csv"
    assert main(["grid", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert tuple(rows[0]) == tuple(GRID_HEADER)
    assert len(rows) == 1 + 3 * 10 * 7


def test_grid_sigma_ball_real_row_is_empty(tmp_path):
    cfg = write(tmp_path, "g.json", {
        "set": {"type": "SigmaBall", "p": [0, 1, 0, 0], "r": 1},
        "grid": {"x": [-3, 3], "y": [0, 0], "nx": 25, "ny": 1},
        "n_units": 2,
    })
    out = tmp_path / "g.csv"
    assert main(["grid", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    col = GRID_HEADER[-1]
    assert rows and all(r[col] in ("0", "False", "false") for r in rows)


def test_grid_missing_resolution(tmp_path):
    cfg = write(tmp_path, "g.json", {"set": {"type": "Dumbbell", "I": [1, 0, 0]}, "grid": {"nx": 10}})
    assert main(["grid", "--config", cfg, "--out", str(tmp_path / "g.csv")]) == 2


def test_counterexample_default(tmp_path):
    code, rep = run_json(["counterexample", "--seed", "0"], tmp_path)
    assert code == 0 and rep["passed"]
    assert rep.get("witness") is not None


def test_counterexample_constant_phi(tmp_path):
    cfg = write(tmp_path, "c.json", {"phi": {"kind": "constant", "value": 0.7}})
    code, rep = run_json(["counterexample", "--config", cfg], tmp_path)
    assert code == 0 and rep["passed"]
    assert rep.get("witness") is None


def test_extend_writes_squares(tmp_path):
    cfg = write(tmp_path, "e.json", {
        "data": {"unit": [1, 0, 0], "center_x": 0, "center_y": 0, "radius": 1,
                 "coefficients": [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]},
        "n_points": 5,
    })
    out = tmp_path / "e.csv"
    assert main(["extend", "--config", cfg, "--out", str(out), "--seed", "2"]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert tuple(rows[0]) == tuple(EXTEND_HEADER)
    assert 1 < len(rows) <= 6
    for r in rows[1:]:
        x, y, ux, uy, uz, *f = map(float, r)
        q = embed(ImaginaryUnit.normalized(ux, uy, uz), x, y)
        assert float((q * q - Quaternion(*f)).norm()) <= 1e-9


def test_paths_on_psi_phi(tmp_path):
    cfg = write(tmp_path, "p.json", {
        "function": {"type": "psi_phi", "J": [0, 1, 0]},
        "path": [[0, 0], [1, 0], [1, 0.3]],
        "units": [[0, 1, 0], [0.1, 1, 0], [1, 0, 0], [0, 0, 1]],
    })
    code, rep = run_json(["paths", "--config", cfg], tmp_path)
    assert code == 0 and rep["passed"]


def test_paths_requires_three_units(tmp_path):
    cfg = write(tmp_path, "p.json", {
        "function": {"type": "constant", "value": [1, 0, 0, 0]},
        "path": [[0, 0], [0.5, 0.5]],
        "units": [[0, 1, 0], [1, 0, 0]],
    })
    assert main(["paths", "--config", cfg, "--out", str(tmp_path / "x.json")]) == 2


@pytest.mark.parametrize("bad", [{"seed": "x"}, {"tolerances": {"nonsense": 1}}])
def test_config_validation(tmp_path, bad):
    cfg = write(tmp_path, "v.json", bad)
    assert main(["verify", "--suite", "algebra", "--config", cfg, "--out", str(tmp_path / "x.json")]) == 2
