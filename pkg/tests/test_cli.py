import json
import subprocess
import sys

import pytest

from branchpack.cli import main
from branchpack.serialize import InstanceDoc, emit_instance


@pytest.fixture
def files(tmp_path, t1, t2, t3, t4):
    out = {}
    for name, r in (("T1", t1), ("T2", t2), ("T3", t3), ("T4", t4)):
        p = tmp_path / f"{name}.json"
        p.write_text(emit_instance(InstanceDoc(r, name)))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, (json.loads(cap.out) if cap.out.strip() else None), cap.err


def test_solve(capsys, files):
    code, out, err = run(capsys, "solve", files["T1"])
    assert code == 0
    assert out["packing"]["x"]["edges"] == ["e1"]
    assert "solved" in err


def test_solve_batch_merges_by_name(capsys, files):
    code, out, _ = run(capsys, "solve", files["T3"], files["T1"], "--jobs", "2")
    assert list(out) == ["T1", "T3"]
    assert out["T1"]["exit"] == 0 and out["T3"]["exit"] == 2
    assert code == 2


def test_check(capsys, files):
    code, out, _ = run(capsys, "check", files["T3"])
    assert code == 2
    assert out["vertex"] == "b" and out["certificate"]["X"] == ["b"]
    assert run(capsys, "check", files["T1"])[0] == 0


def test_verify(capsys, files, tmp_path):
    code, out, _ = run(capsys, "solve", files["T2"])
    pk = tmp_path / "p.json"
    pk.write_text(json.dumps(out["packing"]))
    assert run(capsys, "verify", files["T2"], str(pk))[0] == 0
    pk.write_text(json.dumps({"x": {"vertices": ["a"], "edges": []}, "y": {"vertices": ["b"], "edges": []}}))
    code, out, _ = run(capsys, "verify", files["T2"], str(pk))
    assert code == 1 and not out["checks"]["maximality"]


def test_max_linkage_rounds(capsys, files):
    code, out, _ = run(capsys, "max-linkage", files["T4"], "--target", "b", "--emit-rounds")
    assert code == 0 and out["rank"] == 2
    assert out["rounds"][-1]["unreachable"]


def test_tight(capsys, files):
    assert run(capsys, "tight", "--set", "b", files["T4"])[0] == 0
    assert run(capsys, "tight", "--set", "a", files["T2"])[0] == 0
    code, _, err = run(capsys, "tight", "--set", "zz", files["T4"])
    assert code == 3


def test_dangerous(capsys, files):
    code, out, _ = run(capsys, "dangerous", files["T4"], "--elem", "y", "--edge", "e1")
    assert code == 0 and out["X"] == ["b"]
    code, out, _ = run(capsys, "dangerous", files["T4"], "--elem", "x", "--edge", "e1")
    assert code == 1 and out["X"] is None
    assert run(capsys, "dangerous", files["T4"], "--elem", "x", "--set", "b")[0] == 1
    assert run(capsys, "dangerous", files["T3"], "--elem", "x", "--edge", "e1")[0] == 2


def test_gen(capsys):
    code = main(["gen", "--seed", "7"])
    first = capsys.readouterr().out
    main(["gen", "--seed", "7"])
    assert code == 0 and capsys.readouterr().out == first
    assert run(capsys, "gen", "--family", "fig3", "--n", "2", "--k", "2")[1]["name"] == "fig3_truncate(2,2)"
    assert run(capsys, "gen", "--family", "fig1", "--n", "1")[0] == 3
    assert run(capsys, "gen", "--max-vertices", "99")[0] == 4


def test_oracle(capsys, files):
    code, out, _ = run(capsys, "oracle", "max-linkage", files["T4"], "--target", "b")
    assert code == 0 and out["rank"] == 2
    assert run(capsys, "oracle", "t-good", files["T4"], "--vertex", "b")[1]["X"] == ["a", "b"]
    assert run(capsys, "oracle", "tight", files["T4"], "--set", "b")[0] == 0
    assert run(capsys, "oracle", "dangerous", files["T4"], "--elem", "y", "--edge", "e1")[0] == 0
    assert run(capsys, "oracle", "packing", files["T3"])[0] == 1
    assert run(capsys, "oracle", "packing", files["T1"], "--guard", "99,99,99")[0] == 4
    assert run(capsys, "oracle", "tight", files["T4"])[0] == 3


def test_input_errors(capsys, tmp_path, files):
    assert run(capsys, "solve", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"digraph": {}}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 3 and "input error" in err


def test_stdin_and_module_entry(files):
    with open(files["T1"]) as fh:
        proc = subprocess.run(
            [sys.executable, "-m", "branchpack", "solve", "-"], stdin=fh, capture_output=True, text=True
        )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["trace"] == [{"elem": "x", "edge": "e1"}]
