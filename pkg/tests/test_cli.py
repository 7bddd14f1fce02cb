import json
import subprocess
import sys

import pytest

from girthlab.cli import main
from girthlab.graphcore import deserialize


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    records = [json.loads(line) for line in out.out.splitlines() if line.startswith("{")]
    return code, records, out.err


def strip_clock(rec):
    rec = json.loads(json.dumps(rec))
    rec["manifest"].pop("wall_clock_s")
    rec.pop("runtime_ms", None)
    return rec


def test_construct_d39(capsys, tmp_path):
    path = tmp_path / "d39.edges"
    code, recs, _ = run(capsys, "construct", "--family", "D", "--k", "3", "--q", "9", "--out", str(path))
    assert code == 0 and recs[0]["vertices"] == 2 * 9 ** 3
    g = deserialize(path.read_text())
    assert g.n == 1458 and g.meta["family"] == "D"


def test_construct_g2rs_and_d3(capsys, tmp_path):
    code, recs, _ = run(capsys, "construct", "--family", "g2rs", "--r", "3", "--s", "2",
                        "--out", str(tmp_path / "g.edges"))
    assert code == 0 and recs[0]["vertices"] == 1024
    code, recs, _ = run(capsys, "construct", "--family", "D3", "--k", "2", "--q", "3",
                        "--out", str(tmp_path / "h.edges"))
    assert code == 0 and recs[0]["triples"] == 243


def test_construct_gate_violation(capsys):
    code, _, err = run(capsys, "construct", "--family", "g2rs", "--r", "2", "--s", "2")
    assert code == 2 and "gcd" in err


def test_analyze_girth(capsys, tmp_path):
    path = tmp_path / "d23.edges"
    run(capsys, "construct", "--family", "D", "--k", "2", "--q", "3", "--out", str(path))
    code, recs, _ = run(capsys, "analyze", str(path), "--girth")
    assert code == 0 and recs[0]["girth"] == 6
    assert recs[0]["manifest"]["command"] == "analyze"


def test_analyze_empty_graph(capsys, tmp_path):
    path = tmp_path / "empty.edges"
    path.write_text("# family=graph k=0 p=0 n=0 modulus= part_sizes=2,2\nA:(0)\nA:(1)\nB:(0)\nB:(1)\n")
    code, recs, _ = run(capsys, "analyze", str(path), "--girth")
    assert code == 0 and recs[0]["girth_text"] == "infinite"


def test_analyze_cycles_auto(capsys, tmp_path):
    path = tmp_path / "d33.edges"
    run(capsys, "construct", "--family", "D", "--k", "3", "--q", "3", "--out", str(path))
    code, recs, _ = run(capsys, "analyze", str(path), "--cycles", "0,0,auto")
    assert code == 0 and recs[0]["min_cycle_len"] == 8 and recs[0]["cycle_count"] > 0


def test_analyze_parse_error_has_line(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("# family=D k=1 p=3 n=1 modulus=0,1 part_sizes=1,1\nA:(0) B:(x)\n")
    code, _, err = run(capsys, "analyze", str(path), "--girth")
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("argv,key", [
    (["verify", "thm10", "--r", "3", "--s", "2"], "c6-free"),
    (["verify", "prop6", "--k", "3", "--q", "4"], "arc-wenger"),
    (["verify", "table2-iso"], "table2-iso"),
])
def test_verify_claims(capsys, argv, key):
    code, recs, _ = run(capsys, *argv)
    assert code == 0 and recs[0]["claim"] == key and recs[0]["pass"] is True


def test_verify_unknown_claim(capsys):
    code, _, err = run(capsys, "verify", "no-such-claim")
    assert code == 2 and "unknown claim" in err


def test_random_delete_is_reproducible(capsys):
    argv = ["random-delete", "--n", "30", "--k", "2", "--seed", "1"]
    code, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert code == 0 and strip_clock(a[0]) == strip_clock(b[0])
    assert a[0]["manifest"]["seed"] == 1


def test_normalize(capsys):
    code, recs, _ = run(capsys, "normalize", "--q", "3", "--vertex", "1,2")
    assert code == 0 and recs[0]["chain"] == "t11(;2)" and recs[0]["image"] == [1, 0]


@pytest.mark.parametrize("argv", [
    ["isocheck", "--map", "table2", "--k", "4", "--q", "3"],
    ["isocheck", "--map", "arc-wenger", "--k", "3", "--q", "3"],
    ["isocheck", "--map", "frobenius", "--r", "3", "--s", "2"],
    ["isocheck", "--map", "link", "--k", "2", "--q", "3"],
])
def test_isocheck(capsys, argv):
    code, recs, _ = run(capsys, *argv)
    assert code == 0 and recs and all(r["ok"] for r in recs)


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("GIRTHLAB_THREADS", "3")
    _, recs, _ = run(capsys, "verify", "table2-iso")
    assert recs[0]["manifest"]["threads"] == 3


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "girthlab.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "girthlab" in out.stdout
