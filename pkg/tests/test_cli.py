from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cohinv.cli import run, sweep_specs


def ok(argv):
    code, text = run(argv)
    assert code == 0, text
    return json.loads(text)


def test_red_e7_sc():
    doc = ok(["red", '{"components":["E7"],"R":[[1]]}'])
    assert doc["result"] == "Z/3 ⊕ Z/4"
    assert doc["closed_form"] == "Z/3 ⊕ Z/4"


def test_red_p_part():
    doc = ok(["red", '{"components":["E7"],"R":[[1]]}', "--p", "2"])
    assert doc["p_part"] == "Z/4"


def test_nr_e6_square():
    doc = ok(["nr", "--p", "2", '{"components":["E6","E6"],"R":[]}'])
    assert doc["result"] == "0"
    assert [s["step"] for s in doc["trace"]] == ["coprime-quotient", "e6-simply-connected"]


def test_nr_requires_p():
    code, text = run(["nr", '{"components":["E7"]}'])
    assert code == 2 and json.loads(text)["error"] == "spec"


def test_witness_lemma22():
    doc = ok(["witness", "lemma22", "--r", "1,1,1"])
    assert doc["residue"] == "x∧y"
    assert doc["torsor"]["quaternions"] == [[["x"], ["y"]], [["x"], ["z"]], [["x"], ["y", "z"]]]


def test_witness_cor43_and_rbar():
    doc = ok(["witness", "cor43", '{"components":["D6","A1"],"R":[[1,0,0],[0,1,0],[0,0,1]]}', "--j", "1"])
    assert doc["residue"] == "x∧y"
    doc = ok(["witness", "rbar", '{"components":["D6","A1"],"R":[[1,1,1]]}', "--r", "1,1"])
    assert doc["residue"] == "x∧y"


def test_witness_rbar_unavailable():
    code, _ = run(["witness", "rbar", '{"components":["D6","A1"],"R":[[1,0,0],[0,1,1]]}', "--r", "1,1"])
    assert code == 2


def test_malformed_spec_pointer():
    code, text = run(["red", '{"components":["E9"],"R":[]}'])
    assert code == 2
    err = json.loads(text)
    assert err["error"] == "spec" and err["pointer"] == "/components/0"


def test_unsupported_shape_exit_code():
    code, text = run(["nr", "--p", "2", '{"components":["D6"],"R":[]}'])
    assert code == 2 and "D6" in json.loads(text)["message"]


def test_dec_reports_agreement():
    doc = ok(["dec", '{"components":["E7"],"R":[]}'])
    assert doc["closed"] == doc["search"] == "12Z" and doc["agree"] is True
    doc = ok(["dec", '{"components":["E6"],"R":[]}'])
    assert doc["agree"] is False
    doc = ok(["dec", "--bound", "3", '{"components":["E6"],"R":[]}'])
    assert doc["agree"] is True


def test_describe_and_qlattice():
    doc = ok(["describe", '{"components":["D6","A1"],"R":[[1,0,0],[0,1,1]]}'])
    assert doc["j_sets"]["m"] == 1
    assert doc["mu"] == "mu2"
    doc = ok(["qlattice", '{"components":["E7"],"R":[]}'])
    assert doc["result"] == "4Z"


def test_spec_from_file(tmp_path):
    f = tmp_path / "spec.json"
    f.write_text('{"components":["E6"],"R":[[1]]}')
    assert ok(["ind", str(f)])["result"] == "Z/2 ⊕ Z/3"


def test_sweep_counts_and_tsv():
    doc = ok(["sweep", "--shape", "E7", "--max-n", "2"])
    assert doc["count"] == 7 and doc["disagreements"] == 0
    code, text = run(["--format", "tsv", "sweep", "--shape", "E6", "--max-n", "1"])
    lines = text.splitlines()
    assert code == 0 and lines[0].split("\t") == ["R", "agree", "closed", "ind", "n", "red"]
    assert len(lines) == 3


def test_sweep_parallel_matches_serial():
    a = run(["sweep", "--shape", "D6A1", "--max-n", "1"])
    b = run(["sweep", "--shape", "D6A1", "--max-n", "1", "--jobs", "2"])
    assert a == b
    assert json.loads(a[1])["disagreements"] == 3


def test_sweep_specs_sizes():
    assert len(sweep_specs("E6", 3)) == 36
    assert len(sweep_specs("D6A1", 1)) == 16


def test_output_deterministic():
    argv = ["red", '{"components":["E7","E7"],"R":[[1,1]]}']
    assert run(argv) == run(argv)


def test_backend():
    assert ok(["backend"])["backend"] in ("compiled", "python")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cohinv.cli", "red", '{"components":["E6"],"R":[]}'],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "Z/2"
    bad = subprocess.run([sys.executable, "-m", "cohinv.cli", "red", "{"], capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == ""


@pytest.mark.parametrize("argv", [["sweep", "--shape", "B2", "--max-n", "1"], ["witness", "lemma22"]])
def test_bad_arguments(argv):
    assert run(argv)[0] == 2


def test_pure_python_fallback_gives_same_output():
    import os
    argv = [sys.executable, "-m", "cohinv.cli", "red", '{"components":["E7","E7"],"R":[[1,1]]}']
    env = dict(os.environ, COHINV_PURE_PYTHON="1")
    slow = subprocess.run(argv, capture_output=True, text=True, env=env, check=True)
    fast = subprocess.run(argv, capture_output=True, text=True, check=True)
    assert slow.stdout == fast.stdout
    backend = subprocess.run([sys.executable, "-m", "cohinv.cli", "backend"], capture_output=True, text=True,
                             env=env, check=True)
    assert json.loads(backend.stdout)["backend"] == "python"
