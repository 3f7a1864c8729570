from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from smfp.cli import main
from smfp.qseries import deserialize


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_eisenstein(tmp_path, capsys):
    out = tmp_path / "e4.smfp"
    code, _, _ = run(["gen", "eisenstein", "--k", "4", "--B", "20", "--out", str(out)], capsys)
    assert code == 0
    f = deserialize(out.read_text())
    assert f.coefficient_list()[:3] == [1, 240, 2160] and f.bound == 20
    side = json.loads((tmp_path / "e4.smfp.log.json").read_text())
    assert side["config"]["seed"] is not None


def test_gen_hasse_and_theta(capsys):
    code, out, _ = run(["gen", "hasse", "--g", "2", "--p", "5", "--B", "8"], capsys)
    assert code == 0 and deserialize(out).raw() == {(0, 0, 0): 1}
    code, out, _ = run(["gen", "theta", "--m", "0000", "--B", "8"], capsys)
    assert code == 0 and deserialize(out).d == 8


def test_gen_errors(tmp_path, capsys):
    code, _, err = run(["gen", "nonsense"], capsys)
    assert code == 2 and "usage" in err
    out = tmp_path / "bad.smfp"
    code, _, err = run(["gen", "theta", "--m", "1010", "--out", str(out)], capsys)
    assert code == 3 and "OddCharacteristic" in err
    assert not out.exists() and os.listdir(tmp_path) == []
    code, _, err = run(["gen", "hasse", "--p", "9"], capsys)
    assert code == 3


def test_op_pipeline(tmp_path, capsys):
    src = tmp_path / "f.smfp"
    run(["gen", "psi4", "--B", "3", "--out", str(src)], capsys)
    dst = tmp_path / "g.smfp"
    code, _, _ = run(["op", "U,V", "--p", "5", str(src), "--out", str(dst)], capsys)
    assert code == 0
    log = json.loads((tmp_path / "g.smfp.log.json").read_text())
    assert [e["name"] for e in log["operators"]] == ["U", "V"]
    code, out, _ = run(["op", "phi", str(src)], capsys)
    assert code == 0 and deserialize(out).g == 1
    code, out, _ = run(["op", "thetadet", str(src)], capsys)
    assert code == 0 and deserialize(out).weight is None


def test_op_bad_edges(tmp_path, capsys):
    src = tmp_path / "e4.smfp"
    run(["gen", "eisenstein", "--k", "4", "--B", "5", "--out", str(src)], capsys)
    code, _, err = run(["op", "phi", str(src)], capsys)
    assert code == 3 and "bad edge input" in err and "-> phi" in err
    code, _, err = run(["op", "thetamatrix,U", "--p", "5", str(src)], capsys)
    assert code == 3 and "thetamatrix -> U" in err
    code, _, err = run(["op", "U", str(src)], capsys)
    assert code == 3 and "F_p" in err


def test_table(tmp_path, capsys):
    src = tmp_path / "e4.smfp"
    run(["gen", "eisenstein", "--k", "4", "--B", "5", "--out", str(src)], capsys)
    code, out, _ = run(["table", str(src), "--max-trace", "2"], capsys)
    rows = out.splitlines()
    assert code == 0 and [r.split()[-1] for r in rows[1:]] == ["1/1", "240/1", "2160/1"]
    empty = tmp_path / "z.smfp"
    empty.write_text("SMFP v1 kind=scalar g=1 domain=Q k=4/1 B=3 d=1\n")
    code, out, _ = run(["table", str(empty)], capsys)
    assert code == 0 and len(out.splitlines()) == 1
    mat = tmp_path / "m.smfp"
    mat.write_text("SMFP v1 kind=matrix g=2 domain=Fp:5 k=one-form B=1 d=1\n2;1;2,0,0 ; 1,2,3\n")
    code, out, _ = run(["table", str(mat)], capsys)
    assert code == 0 and "[[1, 2], [2, 3]]" in out
    bad = tmp_path / "bad.smfp"
    bad.write_text("SMFP v1 kind=scalar g=1 domain=Q k=4/1 B=3 d=1\n1;1;0 ; 1\n")
    code, _, err = run(["table", str(bad)], capsys)
    assert code == 4 and "line 2" in err


def test_verify_exit_codes_and_determinism(tmp_path, capsys):
    code, out, _ = run(["verify", "hasse-lift", "--p", "11", "--B", "20"], capsys)
    assert code == 0 and "CHECK hasse-lift seed=" in out and " PASS " in out
    code, out, _ = run(["verify", "starstar", "--p", "5"], capsys)
    assert code == 0 and "REPORT" in out
    code, out, _ = run(["verify", "starstar", "--p", "3"], capsys)
    assert code == 1 and "FAIL" in out
    code, _, _ = run(["verify", "nonsense"], capsys)
    assert code == 2
    a = [run(["verify", "ring-laws", "--seed", "42"], capsys)[1] for _ in range(2)]
    assert a[0] == a[1] and "seed=42" in a[0]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "smfp", "gen", "delta", "--B", "3"],
                         capture_output=True, text=True, check=True)
    assert deserialize(res.stdout).coefficient_list() == [0, 1, -24, 252]
