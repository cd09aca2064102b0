import csv
import io
import json

from steinertree import Instance, save_stp
from steinertree.cli import main


def _star3_file(tmp_path):
    inst = Instance.build(4, [(1, 4, 1), (2, 4, 1), (3, 4, 1)], [1, 2, 3],
                          name="star3")
    path = str(tmp_path / "star3.stp")
    save_stp(inst, path)
    return path


# ------------------------------
# solve
# ------------------------------

def test_solve_json(tmp_path, capsys):
    rc = main(["solve", _star3_file(tmp_path), "--k", "3"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["costs"]["solution"] == 3
    assert doc["bounds"]["ok"] is True


def test_solve_csv(tmp_path, capsys):
    rc = main(["solve", _star3_file(tmp_path), "--format", "csv"])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0][0] == "instance"
    assert rows[1][0] == "star3"
    assert dict(zip(rows[0], rows[1]))["cost"] == "3"


def test_solve_mode_flag(tmp_path, capsys):
    rc = main(["solve", _star3_file(tmp_path), "--mode", "mst"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["costs"]["mst"] == 4
    # Path expansion through the shared hub beats the metric MST.
    assert doc["costs"]["solution"] == 3
    assert doc["costs"]["base"] is None


def test_solve_missing_file_is_input_error(tmp_path, capsys):
    rc = main(["solve", str(tmp_path / "nope.stp")])
    assert rc == 2
    assert "input error" in capsys.readouterr().err


def test_solve_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.stp"
    path.write_text("SECTION Graph\nWAT\nEND\n")
    rc = main(["solve", str(path)])
    assert rc == 2


# ------------------------------
# bench
# ------------------------------

def test_bench_directory(tmp_path, capsys):
    _star3_file(tmp_path)
    inst = Instance.build(2, [(1, 2, 5)], [1, 2], name="pair")
    save_stp(inst, str(tmp_path / "pair.stp"))
    rc = main(["bench", str(tmp_path), "--k", "3"])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    names = [r[0] for r in rows]
    assert names == ["instance", "pair", "star3", "(summary)"]
    star_row = dict(zip(rows[0], rows[2]))
    assert star_row["ratio_opt"] == "1.000000"
    assert rows[-1][-1] == "ok=2;error=0"


def test_bench_keeps_going_after_bad_file(tmp_path, capsys):
    _star3_file(tmp_path)
    (tmp_path / "broken.stp").write_text("SECTION Graph\nnonsense\n")
    rc = main(["bench", str(tmp_path)])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    byname = {r[0]: r for r in rows[1:]}
    assert byname["broken"][-1].startswith("error:")
    assert rows[-1][-1] == "ok=1;error=1"


def test_bench_out_file(tmp_path, capsys):
    _star3_file(tmp_path)
    out = tmp_path / "results.csv"
    rc = main(["bench", str(tmp_path), "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    assert text.startswith("instance,")
    assert "star3" in text


def test_bench_missing_directory_is_usage_error(tmp_path, capsys):
    rc = main(["bench", str(tmp_path / "missing")])
    assert rc == 1
    assert "usage error" in capsys.readouterr().err


def test_bench_empty_directory_header_only(tmp_path, capsys):
    rc = main(["bench", str(tmp_path)])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert rows[0][0] == "instance"


# ------------------------------
# bounds
# ------------------------------

def test_bounds_crossover(capsys):
    rc = main(["bounds", "--solve-alpha-star", "--tol", "1e-8"])
    assert rc == 0
    out = capsys.readouterr().out
    values = {}
    for line in out.strip().splitlines():
        key, _, val = line.partition(" = ")
        values[key] = float(val)
    assert abs(values["alpha_star"] - 0.7147) < 1e-3
    assert abs(values["ratio"] - 1.4295) < 1e-3


def test_bounds_curve_point(capsys):
    rc = main(["bounds", "--alpha", "0.5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "curve_merge_bound" in out
    assert "worst_case" in out


def test_bounds_bad_alpha(capsys):
    rc = main(["bounds", "--alpha", "1.5"])
    assert rc == 2


def test_bounds_requires_a_task(capsys):
    rc = main(["bounds"])
    assert rc == 1


# ------------------------------
# parser plumbing
# ------------------------------

def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(tmp_path, capsys):
    assert main(["solve", _star3_file(tmp_path), "--nope"]) == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "steinertree", "bounds", "--alpha", "0.25"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "worst_case" in proc.stdout
