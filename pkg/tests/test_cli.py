from __future__ import annotations

import json
import subprocess
import sys

import pytest

from detachkit import constructions as C
from detachkit.cli import main
from detachkit.fileformat import parse_matroid, write_matroid
from detachkit.isomorphism import is_isomorphic


@pytest.fixture
def files(tmp_path):
    def make(name, *argv):
        p = tmp_path / f"{name}.mat"
        assert main(["generate", *argv, "--out", str(p)]) == 0
        return str(p)

    return make


def test_generate_writes_parseable_files(files):
    p = files("s4", "spike", "--t", "4", "--tip", "--cotip")
    M = parse_matroid(p)
    assert (M.table == C.spike(4, True, True).table).all()
    assert is_isomorphic(parse_matroid(files("k33", "k3k", "--k", "3")), C.k33k(3))


def test_generate_to_stdout(capsys):
    assert main(["generate", "wheel", "--r", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("MATROID W3 N=6 R=3") and "GRAPH" in out


def test_spike_with_tip_and_cotip_has_no_pairs(files, capsys, tmp_path):
    p = files("s4", "spike", "--t", "4", "--tip", "--cotip")
    capsys.readouterr()
    rep = tmp_path / "r.json"
    assert main(["--json", str(rep), "pairs", p]) == 0
    assert "none" in capsys.readouterr().out
    assert json.loads(rep.read_text())["result"] == []


def test_pairs_with_minor(files, capsys):
    m = files("u37", "uniform", "--r", "3", "--n", "7")
    n = files("u24", "uniform", "--r", "2", "--n", "4")
    capsys.readouterr()
    assert main(["pairs", m, "--minor", n]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "pairs:" and len(lines) == 22 and all("delete" in x for x in lines[1:])


def test_bad_flag_is_a_usage_error(capsys):
    assert main(["pairs", "--frobnicate"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["generate", "wheel", "--ranks", "a,b"]) == 2
    assert main([]) == 2


def test_missing_parameters_are_usage_errors(capsys):
    assert main(["generate", "spike"]) == 2


def test_analyze_example_is_a_precondition_error(files, capsys, tmp_path):
    ex = files("ex", "example")
    f7 = tmp_path / "f7.mat"
    write_matroid(C.fano(), f7)
    capsys.readouterr()
    assert main(["analyze", ex, str(f7)]) == 2
    assert "|E(M)| - |E(N)| >= 5" in capsys.readouterr().err


def test_analyze_spike(files, capsys):
    m = files("s5", "spike", "--t", "5")
    n = files("u24", "uniform", "--r", "2", "--n", "4")
    capsys.readouterr()
    assert main(["analyze", m, n]) == 0
    assert "SEPARATOR (SPIKE_LIKE)" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.mat"
    p.write_text("MATROID x N=2\n")
    assert main(["pairs", str(p)]) == 2
    assert "parse error" in capsys.readouterr().err
    assert main(["pairs", str(tmp_path / "missing.mat")]) == 2


def test_detect_and_augment(files, capsys, tmp_path):
    ex = files("ex", "example")
    capsys.readouterr()
    rep = tmp_path / "d.json"
    assert main(["--json", str(rep), "detect", ex, "--kind", "QUAD", "--augment"]) == 0
    res = json.loads(rep.read_text())["result"]
    assert any(c["kind"] == "QUAD" and c.get("aug") == "h" and c["aug_side"] == "coclosure" for c in res)
    assert "QUAD: q1 q2 q3 q4" in capsys.readouterr().out


def test_exchange(files, capsys, tmp_path):
    w = files("w3", "wheel", "--r", "3")
    out = tmp_path / "k23.mat"
    assert main(["exchange", w, "--triangle", "s1,r1,s2", "--out", str(out)]) == 0
    assert is_isomorphic(parse_matroid(out), C.graphic(C.complete_bipartite_graph(2, 3)))
    assert main(["exchange", w, "--triangle", "s1,r1,zz"]) == 2
    assert main(["exchange", w, "--triad", "s1,r1,s2"]) == 2  # not a triad
    assert main(["exchange", w]) == 2


def test_graph_verify(files, capsys):
    g = files("w6", "wheel", "--r", "6")
    h = files("w3", "wheel", "--r", "3")
    capsys.readouterr()
    assert main(["graph-verify", g, h]) == 0
    assert "DELTA_Y_DETACHABLE" in capsys.readouterr().out


def test_verify_theorem_on_a_directory(files, capsys, tmp_path):
    files("u39", "uniform", "--r", "3", "--n", "9")
    files("s5", "spike", "--t", "5")
    n = files("u24", "uniform", "--r", "2", "--n", "4")
    capsys.readouterr()
    rep = tmp_path / "v.json"
    assert main(["--json", str(rep), "verify-theorem", "--catalog", str(tmp_path), "--minor", n]) == 0
    cases = {r["M"]: r["outcome"]["case"] for r in json.loads(rep.read_text())["result"]}
    assert cases == {"u39": "DETACHABLE_PAIR", "s5": "SEPARATOR"}
    assert main(["verify-theorem", "--catalog", str(tmp_path / "nowhere")]) == 2


def test_chain_scan(capsys):
    assert main(["chain-scan", "--max-n", "6"]) == 0
    assert capsys.readouterr().out.startswith("chain-scan:")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "detachkit.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "verify-theorem" in r.stdout
