import json
import subprocess
import sys

import pytest

from primzono.cli import main

EXAMPLE_W = "0,0,1,1,0,0,1,1,0,0,1,1\n0,1,0,1,0,1,0,1,0,1,0,1\n"


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_generators(capsys, cache_dir):
    code, out, _ = run(capsys, "generators", "-d", "2", "-p", "2", "-q", "1")
    assert code == 0 and len(json.loads(out)["generators"]) == 4
    code, out, _ = run(capsys, "generators", "-d", "2", "-p", "2", "-q", "inf", "--positive")
    assert len(json.loads(out)["generators"]) == 5
    code, out, _ = run(capsys, "generators", "-d", "3", "-p", "1", "-q", "1", "--format", "csv")
    assert out.splitlines()[1:] == ["0,0,1", "0,1,0", "1,0,0"]


@pytest.mark.parametrize("args,want", [
    (("-d", "3", "-p", "2", "-q", "1"), (48, 9, 5)),
    (("-d", "3", "-p", "1", "-q", "inf"), (96, 13, 9)),
    (("-d", "2", "-p", "1", "-q", "inf"), (8, 4, 3)),
])
def test_summary(capsys, cache_dir, args, want):
    code, out, _ = run(capsys, "summary", *args)
    s = json.loads(out)["summary"]
    assert code == 0 and (s["count"], s["diameter"], s["grid"]) == want
    # second call is served from the cache with identical bytes
    assert run(capsys, "summary", *args)[1] == out
    assert list(cache_dir.glob("*.json.gz"))


def test_vertices_json_and_cache_corruption(capsys, cache_dir):
    code, out, _ = run(capsys, "vertices", "-d", "2", "-p", "2", "-q", "1")
    doc = json.loads(out)
    assert {tuple(v["z"]) for v in doc["vertices"]} == {
        (-3, -1), (-3, 1), (-1, 3), (1, 3), (3, 1), (3, -1), (1, -3), (-1, -3)}
    for f in cache_dir.glob("*.json.gz"):
        f.write_bytes(f.read_bytes()[:-10])
    assert run(capsys, "vertices", "-d", "2", "-p", "2", "-q", "1")[1] == out


def test_verify_reference_survives_corrupt_cache(capsys, cache_dir):
    code, out, _ = run(capsys, "verify-reference")
    assert code == 0, out
    assert "FAIL" not in out and out.rstrip().endswith("reference checks passed")
    files = list(cache_dir.glob("*.json.gz"))
    assert files
    for i, f in enumerate(files):
        raw = f.read_bytes()
        # alternate between a truncated payload and a flipped payload byte
        f.write_bytes(raw[:-10] if i % 2 else raw[:-1] + bytes([raw[-1] ^ 0xFF]))
    code, again, _ = run(capsys, "verify-reference")
    assert code == 0 and "FAIL" not in again
    assert again.splitlines()[-1] == out.splitlines()[-1]


def test_threads_flag_is_output_neutral(capsys, cache_dir):
    a = run(capsys, "vertices", "-d", "3", "-p", "1", "-q", "inf", "--no-cache")[1]
    b = run(capsys, "vertices", "-d", "3", "-p", "1", "-q", "inf", "--no-cache", "--threads", "4")[1]
    assert a == b


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", "-d", "4", "-k", "7")
    r = json.loads(out)["records"][0]
    assert code == 0 and r["diameter"] == 16 and r["grid"] == 7
    assert json.loads(run(capsys, "delta", "-d", "3", "-k", "3")[1])["records"][0]["diameter"] == 6
    assert json.loads(run(capsys, "delta", "-d", "3", "-k", "3")[1])["records"][0]["inferred_schedule"]
    code, out, _ = run(capsys, "delta-table", "--kmax", "17")
    assert [r["diameter"] for r in json.loads(out)["records"]] == [
        2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 9, 10, 10, 10, 11, 12]


def _files(tmp_path, matroid, w):
    m = tmp_path / "m.txt"
    m.write_text(matroid)
    wf = tmp_path / "w.csv"
    wf.write_text(w)
    return str(m), str(wf)


def test_matroid_solve_example(capsys, tmp_path):
    m, w = _files(tmp_path, "uniform 12 6\n", EXAMPLE_W)
    code, out, _ = run(capsys, "matroid-solve", m, w, "-d", "2", "-p", "1", "--verify-bruteforce")
    doc = json.loads(out)
    assert code == 0 and doc["projection"] == [3, 6] and doc["objective"] == 45
    assert doc["counterparts"] == 8 and doc["queries"] > 0 and doc["bruteforce"]["agrees"]


def test_matroid_solve_d1(capsys, tmp_path):
    m, w = _files(tmp_path, "graphic\n# a triangle\n1 2\n2 3\n1 3\n", "1,0,1\n")
    doc = json.loads(run(capsys, "matroid-solve", m, w, "-d", "1", "-p", "1", "-f", "linear")[1])
    assert doc["projection"] == [2] and doc["counterparts"] == 2


def test_matroid_solve_explicit(capsys, tmp_path):
    m, w = _files(tmp_path, "explicit\n110\n101\n011\n", "1,0,0\n0,1,1\n")
    doc = json.loads(run(capsys, "matroid-solve", m, w, "-d", "2", "-p", "1",
                         "-f", "max_coordinate", "--verify-bruteforce")[1])
    assert doc["bruteforce"]["agrees"] and doc["objective"] == 2


@pytest.mark.parametrize("matroid,w,line", [
    ("graphic\n1 2\n2\n", "0\n", 3),
    ("uniform 4\n", "0,0,0,0\n", 1),
    ("uniform a b\n", "0,0,0,0\n", 1),
    ("explicit\n11\n1x\n", "0,0\n", 3),
    ("bogus 1 2\n", "0\n", 1),
    ("uniform 4 2\n", "0,0,0,0\n0,0,x,0\n", 2),
    ("uniform 4 2\n", "0,0,0,0\n0,0,0\n", 2),
])
def test_malformed_files(capsys, tmp_path, matroid, w, line):
    m, wf = _files(tmp_path, matroid, w)
    code, out, err = run(capsys, "matroid-solve", m, wf, "-d", "2", "-p", "1")
    assert code == 1 and out == ""
    msg = json.loads(err)
    assert msg["exit_code"] == 1 and f":{line}:" in msg["message"]
    assert len(err.strip().splitlines()) == 1


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "summary", "-d", "9", "-p", "3", "-q", "inf", "--no-cache")
    assert code == 2 and json.loads(err)["error"] == "ResourceLimitError"
    for bad in (["summary", "-d", "x", "-p", "1"], ["summary", "-d", "2"], ["nope"],
                ["summary", "-d", "2", "-p", "1", "-q", "0"], ["delta", "-d", "3", "-k", "9"],
                ["generators", "-d", "2", "-p", "1", "--format", "xml"]):
        code, _, err = run(capsys, *bad)
        assert code == 1, bad
        assert json.loads(err)["exit_code"] == 1
    code, _, err = run(capsys, "summary", "-d", "3", "-p", "1", "--vertex-cap", "3", "--no-cache")
    assert code == 2


def test_entry_point_subprocess(tmp_path):
    out = subprocess.run([sys.executable, "-m", "primzono", "generators", "-d", "2", "-p", "1",
                          "-q", "inf", "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.count("\n") == 5
    out = subprocess.run([sys.executable, "-m", "primzono", "summary"], capture_output=True, text=True)
    assert out.returncode == 1 and json.loads(out.stderr)["error"] == "UsageError"
