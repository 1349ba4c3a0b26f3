from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

from bipspec import bigraph
from bipspec.cli import run
from bipspec.vsplit import vertex_split

GOLDEN = Path(__file__).parent / "golden"


def _write_graph(tmp_path: Path, g, name: str = "graph.bip") -> str:
    path = tmp_path / name
    path.write_text(bigraph.write_edge_list(g), encoding="utf-8")
    return str(path)


def test_gen_complete_stdout(capsys):
    assert run(["gen", "--complete", "8", "4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("bip 8 4\n")
    assert out.count("\ne ") == 32


def test_gen_tree_deterministic(tmp_path):
    a, b = tmp_path / "a.bip", tmp_path / "b.bip"
    assert run(["gen", "--tree", "10", "--mode", "balanced", "--seed", "4", "--out", str(a)]) == 0
    assert run(["gen", "--tree", "10", "--mode", "balanced", "--seed", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    g = bigraph.read_edge_list(a.read_text(encoding="utf-8"))
    assert (g.n1, g.n2, g.m) == (5, 5, 9)


def test_spectrum_command(tmp_path, capsys):
    graph = _write_graph(tmp_path, bigraph.complete_bipartite(8, 4))
    out_json = tmp_path / "spec.json"
    assert run(["spectrum", "--graph", graph, "--json", str(out_json)]) == 0
    report = json.loads(out_json.read_text(encoding="utf-8"))
    finding = report["findings"][0]
    assert finding["type"] == "spectrum"
    assert finding["kind"] == "adjacency"
    assert finding["eigenvalues"][0] == pytest.approx(math.sqrt(32), abs=1e-8)
    assert report["exit_status"] == 0


def test_bounds_p4_clean(tmp_path):
    graph = _write_graph(tmp_path, bigraph.path_graph(4))
    out_json = tmp_path / "bounds.json"
    assert run(["bounds", "--graph", graph, "--json", str(out_json)]) == 0
    report = json.loads(out_json.read_text(encoding="utf-8"))
    assert report["violations"] == []
    bound_ids = [f["bound_id"] for f in report["findings"] if f["type"] == "bound"]
    assert bound_ids == [
        "T1.iii",
        "T1.iv",
        "Cor-regular-adj",
        "T2-tree",
        "T9-tree",
        "T5.ii",
        "Cor-regular-lap",
        "Note-complete-lap",
    ]


def test_bounds_p20_audit(tmp_path):
    graph = _write_graph(tmp_path, bigraph.path_graph(20), "p20.bip")
    out_json = tmp_path / "bounds.json"
    assert run(["bounds", "--graph", graph, "--json", str(out_json)]) == 1
    report = json.loads(out_json.read_text(encoding="utf-8"))
    violated = {f["bound_id"] for f in report["violations"] if f["type"] == "bound"}
    assert {"T1.iii", "T1.iv", "T2-tree", "T9-tree", "T5.ii"} <= violated
    t1 = next(f for f in report["findings"] if f.get("bound_id") == "T1.iii")
    assert t1["observed"] == pytest.approx(2 * math.cos(2 * math.pi / 21), abs=1e-6)
    assert t1["bound"] == pytest.approx(1.9, abs=1e-6)
    chains = [f for f in report["violations"] if f["type"] == "interlacing"]
    assert chains and all(not f["claimed_chain_holds"] for f in chains)
    assert report["exit_status"] == 1


def test_bounds_golden_json(tmp_path):
    graph = _write_graph(tmp_path, bigraph.path_graph(4), "p4.bip")
    out_json = tmp_path / "bounds.json"
    run(["bounds", "--graph", graph, "--json", str(out_json)])
    produced = json.loads(out_json.read_text(encoding="utf-8"))
    golden = json.loads((GOLDEN / "bounds_p4.json").read_text(encoding="utf-8"))
    # inputs echo the (temporary) graph path; everything else must be frozen
    produced["inputs"]["graph"] = "p4.bip"
    assert produced == golden


def test_split_command_files_and_checks(tmp_path):
    graph = _write_graph(tmp_path, bigraph.complete_bipartite(5, 5))
    out_json = tmp_path / "split.json"
    base = tmp_path / "split_out"
    status = run(
        ["split", "--graph", graph, "--k", "2", "--out", str(base), "--json", str(out_json)]
    )
    assert status == 0
    split_graph = bigraph.read_edge_list((base.with_suffix(".bip")).read_text(encoding="utf-8"))
    assert (split_graph.n1, split_graph.n2, split_graph.m) == (5, 10, 25)
    sidecar = json.loads(base.with_suffix(".json").read_text(encoding="utf-8"))
    assert set(sidecar) == {"mapping", "rule", "warnings"}
    report = json.loads(out_json.read_text(encoding="utf-8"))
    kinds = [f["type"] for f in report["findings"]]
    assert kinds == ["split", "connectivity-criterion", "connectivity-criterion"]
    r1 = report["findings"][1]
    assert r1["criterion_met"] and r1["conclusion_holds"]


def test_split_seeded_random_byte_identical(tmp_path):
    graph = _write_graph(tmp_path, bigraph.random_tree(12, "balanced", 7))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["split", "--graph", graph, "--rule", "seeded-random", "--seed", "3"]
    assert run(argv + ["--json", str(out1)]) == run(argv + ["--json", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_expansion_command(tmp_path):
    split_graph = _write_graph(
        tmp_path, vertex_split(bigraph.complete_bipartite(8, 4)).split_graph
    )
    out_json = tmp_path / "exp.json"
    assert run(["expansion", "--graph", split_graph, "--gamma", "0.25", "--json", str(out_json)]) == 0
    report = json.loads(out_json.read_text(encoding="utf-8"))
    exp = report["findings"][0]
    assert exp["type"] == "expansion"
    assert exp["alpha"] == 2.5
    lossless = report["findings"][1]
    assert lossless["type"] == "lossless"
    assert lossless["epsilon"] == 0.375


def test_code_pipeline_json(tmp_path):
    out_json = tmp_path / "code.json"
    assert run(["code", "--pipeline", "8", "--json", str(out_json)]) == 0
    report = json.loads(out_json.read_text(encoding="utf-8"))
    code = next(f for f in report["findings"] if f["type"] == "code")
    assert code["block_length"] == 8
    distance = next(f for f in report["findings"] if f["type"] == "distance")
    assert distance["lemma_bound"] == 2.5
    assert distance["cor8_bound"] == 2.5
    assert distance["bound_holds"] is True
    rule = next(f for f in report["findings"] if f["type"] == "n2-rule")
    assert rule["feasible"] is False


def test_code_graph_and_formats(tmp_path):
    graph = _write_graph(tmp_path, bigraph.complete_bipartite(2, 1))
    pchk = tmp_path / "code.pchk"
    alist = tmp_path / "code.alist"
    assert run(["code", "--graph", graph, "--pchk", str(pchk), "--alist", str(alist)]) == 0
    assert pchk.read_text(encoding="utf-8") == "pchk 1 2\n11\n"
    assert alist.read_text(encoding="utf-8").splitlines()[0] == "2 1"


def test_usage_errors(tmp_path):
    assert run(["frobnicate"]) == 2
    assert run(["bounds"]) == 2  # --graph required
    assert run(["bounds", "--graph", "/nonexistent/file.bip"]) == 2
    assert run(["gen", "--tree", "7", "--mode", "average"]) == 2  # infeasible n
    graph = _write_graph(tmp_path, bigraph.complete_bipartite(3, 3))
    assert run(["expansion", "--graph", graph]) == 2  # neither --cap nor --gamma
    bad = tmp_path / "bad.bip"
    bad.write_text("bip 2 2\ne 0 9\n", encoding="utf-8")
    assert run(["spectrum", "--graph", str(bad)]) == 2


def test_gen_json_envelope(tmp_path):
    out = tmp_path / "gen.json"
    assert run(["gen", "--complete", "3", "2", "--out", str(tmp_path / "g.bip"), "--json", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["findings"] == [{"type": "graph", "n1": 3, "n2": 2, "m": 6}]
    assert report["violations"] == []


def test_run_report_schema(tmp_path):
    graph = _write_graph(tmp_path, bigraph.path_graph(4))
    out_json = tmp_path / "r.json"
    run(["bounds", "--graph", graph, "--json", str(out_json)])
    report = json.loads(out_json.read_text(encoding="utf-8"))
    assert set(report) == {"command", "inputs", "findings", "violations", "exit_status"}
    assert report["command"] == "bounds"
