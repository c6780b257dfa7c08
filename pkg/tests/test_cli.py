"""End-to-end CLI behaviour: subcommands, formats, exit codes."""

import json
import subprocess
import sys

import pytest

import twolayer as tl
from twolayer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------- gen

def test_gen_tree_writes_drawing(capsys, tmp_path):
    out = tmp_path / "tree.json"
    code, _, _ = run(capsys, "gen", "tree", "--height", "2", "--out", str(out))
    assert code == 0
    d = tl.drawing_from_json(out.read_text())
    assert d == tl.complete_binary_tree(2)[1]


def test_gen_star_graph_only(capsys):
    code, out, _ = run(capsys, "gen", "star", "--legs", "3")
    assert code == 0
    g = tl.graph_from_json(out)
    assert g == tl.subdivided_star(3)
    assert "orderA" not in json.loads(out)


def test_gen_star_fan_is_a_drawing(capsys):
    code, out, _ = run(capsys, "gen", "star", "--legs", "3", "--fan")
    assert code == 0
    assert tl.drawing_from_json(out) == tl.star_fan_drawing(3)[1]


def test_gen_random_respects_seed(capsys):
    args = ("gen", "random", "--na", "4", "--nb", "4", "--p", "0.5", "--seed", "9")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_gen_svg_needs_a_drawing(capsys):
    code, out, _ = run(capsys, "gen", "grid", "--side", "2", "--format", "svg")
    assert code == 0 and out.startswith("<svg")
    code2, _, err = run(capsys, "gen", "star", "--legs", "3", "--format", "svg")
    assert code2 == 2
    assert "error" in err


def test_gen_cap_exceeded_is_exit_3(capsys):
    code, _, _ = run(capsys, "gen", "tree", "--height", "99")
    assert code == 3
    code, _, _ = run(capsys, "gen", "tree", "--height", "11", "--cap-n", "11")
    assert code == 0


# -------------------------------------------------------- analyze/decompose

@pytest.fixture
def tree_drawing_file(tmp_path):
    path = tmp_path / "tree3.json"
    path.write_text(tl.drawing_to_json(tl.complete_binary_tree(3)[1]))
    return path


def test_analyze_tree(capsys, tree_drawing_file):
    code, out, _ = run(capsys, "analyze", "--in", str(tree_drawing_file))
    assert code == 0
    rep = json.loads(out)
    assert rep["k"] == 2
    assert rep["stFrontier"] == [[1, 3], [3, 1]]


def test_decompose_then_check(capsys, tmp_path, tree_drawing_file):
    pd_path = tmp_path / "pd.json"
    cert_path = tmp_path / "cert.json"
    code, _, _ = run(
        capsys, "decompose", "--in", str(tree_drawing_file),
        "--out", str(pd_path), "--cert", str(cert_path),
    )
    assert code == 0
    cert = json.loads(cert_path.read_text())
    assert cert["widthBound"] == 46

    graph_path = tmp_path / "g.json"
    graph_path.write_text(tl.graph_to_json(tl.complete_binary_tree(3)[0]))
    code, out, _ = run(
        capsys, "check-pd", "--in", str(pd_path), "--graph", str(graph_path)
    )
    assert code == 0
    verdict = json.loads(out)
    assert verdict == {"ok": True, "width": 6, "violations": []}


def test_check_pd_reports_violations(capsys, tmp_path):
    graph_path = tmp_path / "g.json"
    g = tl.bipartition_from_edges((("u", "v"), ("v", "w")))
    graph_path.write_text(tl.graph_to_json(g))
    pd_path = tmp_path / "pd.json"
    pd_path.write_text(
        tl.decomposition_to_json(tl.PathDecomposition((("u",), ("v",), ("w",))))
    )
    code, out, _ = run(
        capsys, "check-pd", "--in", str(pd_path), "--graph", str(graph_path)
    )
    assert code == 1
    verdict = json.loads(out)
    assert verdict["ok"] is False
    assert {v["kind"] for v in verdict["violations"]} == {"edge"}


# --------------------------------------------------------- pathwidth/layout

def test_pathwidth_and_layout_pipeline(capsys, tmp_path):
    g, _ = tl.grid_graph(2)
    graph_path = tmp_path / "g.json"
    graph_path.write_text(tl.graph_to_json(g))

    code, out, _ = run(capsys, "pathwidth", "--in", str(graph_path))
    assert code == 0
    result = json.loads(out)
    assert result["pathwidth"] == 2
    assert sorted(result["order"]) == sorted(g.vertices)
    pd = tl.PathDecomposition(tuple(tuple(bag) for bag in result["bags"]))
    assert tl.validate_decomposition(g, pd) == ()

    pd_path = tmp_path / "pd.json"
    pd_path.write_text(tl.decomposition_to_json(pd))
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(
        capsys, "layout", "--in", str(pd_path), "--graph", str(graph_path),
        "--cert", str(cert_path),
    )
    assert code == 0
    d = tl.drawing_from_json(out)
    assert d.graph == g
    cert = json.loads(cert_path.read_text())
    assert cert["maxCrossingOk"] is True and cert["stOk"] is True


def test_pathwidth_cap_is_exit_3(capsys, tmp_path):
    g, _ = tl.random_drawing(12, 12, 0.3, 4)
    graph_path = tmp_path / "g.json"
    graph_path.write_text(tl.graph_to_json(g))
    code, _, _ = run(capsys, "pathwidth", "--in", str(graph_path), "--cap-n", "10")
    assert code == 3


# ----------------------------------------------------------------- render

def test_render_dispatches_on_payload(capsys, tmp_path, tree_drawing_file):
    code, out, _ = run(capsys, "render", "--in", str(tree_drawing_file))
    assert code == 0 and out.startswith("<svg")

    pd_path = tmp_path / "pd.json"
    pd_path.write_text(
        tl.decomposition_to_json(tl.PathDecomposition((("u",), ("u", "v"))))
    )
    code, out, _ = run(capsys, "render", "--in", str(pd_path))
    assert code == 0 and "<rect" in out

    code, _, err = run(capsys, "render", "--in", str(pd_path), "--format", "json")
    assert code == 2 and "error" in err


# ------------------------------------------------------------------- fuzz

def test_fuzz_subcommand(capsys):
    code, out, _ = run(capsys, "fuzz", "--trials", "20", "--seed", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["trials"] == 20
    assert all(s["failed"] == 0 for s in rep["checks"].values())


def test_fuzz_check_selection(capsys):
    code, out, _ = run(
        capsys, "fuzz", "--trials", "5", "--seed", "1", "--checks", "decompose"
    )
    assert code == 0
    assert set(json.loads(out)["checks"]) == {"decompose"}


# ------------------------------------------------------------- error paths

def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "--in", "/nonexistent/x.json")
    assert code == 2
    assert "error" in err


def test_malformed_payload_is_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"a": 1}')
    code, _, err = run(capsys, "analyze", "--in", str(bad))
    assert code == 1
    assert "error" in err


def test_no_arguments_is_usage_error(capsys):
    assert run(capsys, )[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_stdin_convention_in_subprocess(tmp_path):
    g = tl.bipartition_from_edges((("u", "v"), ("v", "w")))
    proc = subprocess.run(
        [sys.executable, "-m", "twolayer", "pathwidth", "--in", "-"],
        input=tl.graph_to_json(g),
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["pathwidth"] == 1
