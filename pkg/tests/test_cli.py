import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from mkzgs import cli


def run(*argv):
    buf = io.StringIO()
    code = cli.build_parser().parse_args(list(argv))
    return code.func(code, buf), buf.getvalue()


def main(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def schema():
    return json.loads(resources.files("mkzgs").joinpath("schema/report.schema.json").read_text())


def test_eval_examples():
    code, out = run("eval", "--op", "mkz-gs-mod", "-n", "6", "-f", "e1", "--points", "0.3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x", "value"]
    assert rows[1][0] == "0.29999999999999999" and float(rows[1][1]) == pytest.approx(0.3, abs=1e-9)
    code, out = run("eval", "--op", "mkz-gs", "-n", "4", "-f", "e0", "--points", "0.5")
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(1.0, abs=1e-12)


def test_eval_ray_grid():
    code, out = run("eval", "--op", "baskakov-gs", "-n", "5", "-f", "e1", "--grid", "0", "4", "5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["xi", "value"] and len(rows) == 6
    for x, v in rows[1:]:
        assert float(v) == pytest.approx(float(x), abs=1e-9)


def test_seventeen_digits():
    _, out = run("eval", "--op", "mkz-gs", "-n", "7", "-f", "sin", "--points", "0.1")
    value = out.splitlines()[1].split(",")[1]
    assert len(value.replace("-", "").replace(".", "").lstrip("0")) >= 15


def test_exit_codes(capsys):
    assert main(capsys, "eval", "--op", "mkz-gs", "-n", "4", "-f", "e0", "--points", "1.5")[0] == 2
    assert main(capsys, "eval", "--op", "mkz-gs", "-n", "4", "-f", "nope", "--points", "0.5")[0] == 2
    assert main(capsys, "eval", "--op", "bogus", "-n", "4", "-f", "e0", "--points", "0.5")[0] == 2
    assert main(capsys, "converge", "--op", "mkz-gs", "-f", "x2", "--n-list", "8")[0] == 2
    assert main(capsys, "frobnicate")[0] == 2
    code, _, err = main(capsys, "eval", "--op", "mkz-gs", "-n", "4", "-f", "e0", "--points", "0.5",
                        "--max-terms", "2")
    assert code == 3 and "numerical failure" in err


def test_converge_csv_and_json():
    code, out = run("converge", "--op", "mkz-gs", "-f", "x2", "--n-list", "4,8,16,32,64")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,error" and len(lines) == 7
    assert -1.3 <= json.loads(lines[-1])["slope"] <= -0.8
    code, out = run("converge", "--op", "mkz-gs", "-f", "x2", "--n-list", "4,8", "--format", "json")
    assert json.loads(out)["n_list"] == [4, 8]


def test_converge_modified_slope():
    _, out = run("converge", "--op", "mkz-gs-mod", "-f", "x2", "--n-list", "4,8,16,32,64")
    assert -2.3 <= json.loads(out.splitlines()[-1])["slope"] <= -1.8


def test_verify_bernstein_validates():
    code, out = run("verify", "bernstein", "-n", "17", "--functions", "sin,x2")
    reports = json.loads(out)
    jsonschema.validate(reports, schema())
    assert code == 0 and reports[0]["ratio"] <= 1.0


def test_verify_converse_constants(capsys):
    code, out, _ = main(capsys, "verify", "converse", "-n", "17", "--functions", "x2")
    reports = json.loads(out)
    jsonschema.validate(reports, schema())
    assert code == 0
    assert all(r["config"]["ell"] == 771 and r["config"]["C"] == 299 for r in reports)
    assert main(capsys, "verify", "converse", "-n", "8")[0] == 2


def test_verify_failure_exit_code():
    code, out = run("verify", "jackson")
    reports = json.loads(out)
    assert code == (0 if all(r["pass"] for r in reports) else 1)


def test_kfunc_examples():
    code, out = run("kfunc", "-f", "e1", "-n", "8")
    d = json.loads(out)
    assert code == 0 and d["lower"] <= 1e-12 and d["upper"] == 0.0
    d = json.loads(run("kfunc", "-f", "x2", "-n", "8")[1])
    assert 0 < d["lower"] <= d["upper"]
    rows = json.loads(run("kfunc", "-f", "sqrt", "-n", "8,32")[1])
    assert rows[1]["upper_times_n2"] > rows[0]["upper_times_n2"]


def test_list_functions():
    code, out = run("list-functions")
    ids = [r[0] for r in csv.reader(io.StringIO(out))][1:]
    assert code == 0 and ids == ["e0", "e1", "x2", "sin", "rat", "sqrt"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert cli.main(["-o", str(target), "verify", "bernstein", "-n", "17", "--functions", "e1"]) == 0
    jsonschema.validate(json.loads(target.read_text()), schema())


def test_deterministic_subprocess():
    # the full suite is compared by the acceptance test; a cheap one suffices here
    cmd = [sys.executable, "-m", "mkzgs", "verify", "bernstein", "-n", "17", "--functions", "sin,rat", "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 0, a.stderr.decode()
    assert a.stdout == b.stdout
    jsonschema.validate(json.loads(a.stdout), schema())
