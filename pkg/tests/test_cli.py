import json
import subprocess
import sys

import pytest

from ndetach.catalog import data_path, save_matroid, uniform, wheel
from ndetach.cli import main


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, M in [("U24", uniform(2, 4).renamed("U24")), ("U26", uniform(2, 6).renamed("U26")), ("K4", wheel(3)), ("U13", uniform(1, 3).renamed("U13"))]:
        path = tmp_path / f"{name}.mtx"
        save_matroid(M, path)
        out[name] = str(path)
    bad = tmp_path / "bad.mtx"
    bad.write_text("MATROID X\nELEMENTS 2\n", encoding="ascii")
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)


def test_analyze_k4(capsys, files):
    code, doc = machine(capsys, "analyze", "--input", files["K4"])
    assert code == 0 and doc["exit_status"] == 0
    res = doc["result"]
    assert len(res["triangles"]) == 4 and len(res["triads"]) == 4
    assert res["three_connected"] is True
    assert doc["command"] == {"name": "analyze", "args": {"input": files["K4"], "set": None}}


def test_analyze_lambda(capsys, files):
    code, doc = machine(capsys, "analyze", "--input", files["U24"], "--set", "0,1")
    assert doc["result"]["lambda"] == 2 and doc["result"]["set"] == [0, 1]


def test_text_format(capsys, files):
    code, out, _ = run(capsys, "analyze", "--input", files["U24"])
    assert code == 0
    assert "three_connected: yes" in out
    assert all(line == line.rstrip() for line in out.splitlines())


@pytest.mark.parametrize(
    "argv,code",
    [
        (["analyze", "--input", "BAD"], 2),
        (["analyze", "--input", "/nonexistent.mtx"], 2),
        (["analyze", "--input", "U24", "--set", "0,9"], 3),
        (["analyze", "--input", "U24", "--set", "0,,1"], 3),
        (["detect-separators", "--input", "U24", "--contains", "99"], 3),
        (["verify", "--matroid", "U26", "--minor", "U24", "--d", "40"], 3),
        (["find-pairs", "--matroid", "U24", "--minor", "U13"], 3),
        (["find-pairs", "--matroid", "U24", "--minor", "K4"], 0),
        (["find-pairs", "--matroid", "U26", "--minor", "U24", "--jobs", "0"], 3),
        (["bogus"], 3),
    ],
)
def test_exit_codes(capsys, files, argv, code):
    argv = [files.get(a, a) if a != "BAD" else files["bad"] for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code
    if code:
        assert out == "" and err


def test_find_pairs_jobs_do_not_change_output(capsys, files):
    _, a, _ = run(capsys, "find-pairs", "--matroid", files["U26"], "--minor", files["U24"], "--format", "machine")
    _, b, _ = run(
        capsys, "find-pairs", "--matroid", files["U26"], "--minor", files["U24"], "--format", "machine", "--jobs", "3"
    )
    assert a == b
    assert len(json.loads(a)["result"]["pairs"]) == 15


def test_detect_separators_on_fixture(capsys):
    path = str(data_path("DoubleQuadHost.mtx"))
    code, doc = machine(capsys, "detect-separators", "--input", path, "--contains", "0")
    kinds = [s["kind"] for s in doc["result"]["separators"]]
    assert kinds == ["ElongatedQuad", "DoubleQuad"]
    dq = doc["result"]["separators"][-1]
    assert dq["partition"] == [[0, 1, 2, 3], [4, 5, 6, 7]]


def test_verify_separator_branch(capsys, files):
    path = str(data_path("DoubleQuadHost.mtx"))
    code, doc = machine(capsys, "verify", "--matroid", path, "--minor", files["U24"], "--d", "0")
    assert code == 0
    assert doc["result"]["branch"] == "SeparatorFound"
    assert doc["result"]["separator"]["kind"] == "DoubleQuad"


def test_verify_hypothesis_failed(capsys, files):
    code, doc = machine(capsys, "verify", "--matroid", files["U26"], "--minor", files["U24"], "--d", "0")
    assert code == 0
    assert doc["result"]["branch"] == "HypothesisFailed"
    assert doc["result"]["hypotheses"]["ok"] is False


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ndetach.cli", "analyze", "--input", files["U24"], "--format", "machine"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["input"]["name"] == "U24"
