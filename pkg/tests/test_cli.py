import json
import math
import subprocess
import sys

import pytest

from mahler_sep.cli import dumps, format_float, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_float_formatting():
    assert format_float(2.0) == "2.0"
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(math.inf) == "Infinity"
    assert json.loads(dumps({"a": [1.5, 2], "b": None, "c": True})) == {"a": [1.5, 2], "b": None, "c": True}


def test_analyze_cubic(capsys):
    code, out, _ = run(capsys, "analyze", "--coeffs", "[-1,0,0,1]")
    assert code == 0
    doc = json.loads(out)
    e = {x["bound_id"]: x for x in doc["entries"]}
    assert abs(e["improved_upper"]["margin"]) <= 1e-12
    assert doc["signature"] == [1, 1]


def test_analyze_quartic_roots(capsys):
    code, out, _ = run(capsys, "analyze", "--roots", "[[1,1],[1,-1],[-1,1],[-1,-1]]")
    doc = json.loads(out)
    assert code == 0
    assert doc["sep"] == 2.0 and doc["mahler"] == pytest.approx(4.0)
    assert doc["all_satisfied"]


def test_analyze_double_root_exit_2(capsys):
    code, _, err = run(capsys, "analyze", "--coeffs", "[1,2,1]")
    assert code == 2 and "non-separable" in err


def test_analyze_float_double_root_exit_2(capsys):
    code, _, _ = run(capsys, "analyze", "--coeffs", "[2,4,2]")
    assert code == 2


def test_analyze_input_file_and_csv(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"coeffs": [-2, 0, 1]}))
    code, out, _ = run(capsys, "analyze", "--input", str(f), "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("bound_id,")


def test_analyze_extended_precision(capsys):
    code, out, _ = run(capsys, "analyze", "--coeffs", "[1,1,0,-1,-1,-1,-1,-1,0,1,1]", "--precision", "30")
    assert code == 0
    assert json.loads(out)["mahler"] == pytest.approx(1.17628081825992, rel=1e-12)


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--coeffs", "[1,"],
    ["analyze", "--coeffs", "[1]"],
    ["family", "--kind", "gaussian"],
    ["family", "--kind", "arithmetic_progression", "--n", "3"],
    ["window", "--n", "1", "--mu", "2"],
])
def test_bad_input_exit_4(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 4


def test_unknown_flag_exit_4(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze", "--bogus"])
    assert info.value.code == 4


def test_family_outputs(capsys):
    code, out, _ = run(capsys, "family", "--kind", "gaussian", "--n", "50")
    assert code == 0 and json.loads(out)["ratio"] >= 1
    code, out, _ = run(capsys, "family", "--kind", "arithmetic_progression", "--n", "201", "--t", "1")
    doc = json.loads(out)
    assert doc["ratio"] == pytest.approx(5.2905, abs=1e-3)
    assert set(doc) >= {"spec", "roots", "sep", "mahler", "ratio"}
    code, out, _ = run(capsys, "family", "--kind", "quartic", "--t", "3")
    assert json.loads(out)["ratio"] == pytest.approx(1, abs=1e-12)


def test_lemmas(capsys):
    code, out, _ = run(capsys, "lemmas", "--n-max", "3")
    lines = out.splitlines()
    assert code == 0
    assert sum(l.startswith("central_binomial,") for l in lines) == 1
    code, out, _ = run(capsys, "lemmas", "--n-max", "400", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and all(r["ok"] for r in rows)
    assert sum(r["check"] == "wendel" for r in rows) == 170


def test_window(capsys):
    code, out, _ = run(capsys, "window", "--n", "2", "--mu", "1.2")
    doc = json.loads(out)
    assert code == 0
    assert doc["lo"] == pytest.approx(0.36084, abs=1e-5) and doc["hi"] == pytest.approx(2.4)


def test_sweep_writes_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "sweep", "--kind", "int_coeff", "--degrees", "2-5",
                          "--count", "20", "--out", str(out))
    assert code == 0
    summary = json.loads(stdout)
    assert summary["violations"] == 0
    assert json.loads((tmp_path / "s.csv.summary.json").read_text()) == summary
    assert out.read_text().startswith("# mahler-sep sweep v1\n")


def test_sweep_unwritable_path(capsys):
    code, _, _ = run(capsys, "sweep", "--n", "3", "--count", "1", "--out", "/nonexistent/dir/x.csv")
    assert code == 4


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "mahler_sep.cli", "window", "--n", "10", "--mu", "1.17628"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["hi"] == pytest.approx(2.036, abs=1e-3)
