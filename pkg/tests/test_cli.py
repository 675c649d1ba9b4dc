import subprocess
import sys

import pytest

from loadcolor import TwoColoring, evaluate_coloring, parse_graph, parse_td, validate, width
from loadcolor.cli import main
from loadcolor.instances import emit_graph, generate, parse_kv


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_yes_with_witness(capsys, write):
    path = write("c6.lcp", emit_graph(generate("cycle", 6)))
    code, out, _ = run(capsys, "solve", "--input", path, "--k", "2", "--witness", "--format", "kv")
    assert code == 0
    kv = parse_kv(out)
    assert kv["verdict"] == "yes" and kv["k"] == "2"
    red = {int(v) for v in kv["red_vertices"].split(",")}
    prof = evaluate_coloring(generate("cycle", 6), TwoColoring.from_red(range(1, 7), red))
    assert prof.mu >= 2 and int(kv["red_edges"]) == prof.red_edges


def test_solve_no(capsys, write):
    path = write("c6.lcp", emit_graph(generate("cycle", 6)))
    code, out, _ = run(capsys, "solve", "--input", path, "--k", "3")
    assert code == 1
    assert "verdict: no" in out


def test_solve_with_supplied_td(capsys, write):
    g = write("p4.lcp", emit_graph(generate("path", 4)))
    td = write("p4.td", "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n")
    code, out, _ = run(capsys, "solve", "--input", g, "--td", td, "--k", "1", "--format", "kv")
    assert code == 0 and parse_kv(out)["decided_by"] == "dp"


def test_optimize_and_oracle_agree(capsys, write):
    path = write("g.lcp", emit_graph(generate("grid", 3, 3)))
    _, out, _ = run(capsys, "optimize", "--input", path, "--format", "kv")
    _, out2, _ = run(capsys, "oracle", "--input", path, "--format", "kv")
    assert parse_kv(out)["mu"] == parse_kv(out2)["mu"] == "4"


def test_kernel_output_parses(capsys, write):
    path = write("star.lcp", emit_graph(generate("star", 10)))
    code, out, _ = run(capsys, "kernel", "--input", path, "--k", "2")
    assert code == 0
    g = parse_graph(out)
    assert (g.n, g.m) == (3, 2)
    assert out.count("c pendant") == 8
    assert "c map 1 1" in out


def test_tw_bound_emits_valid_td(capsys, write):
    star = generate("star", 10)
    path = write("star.lcp", emit_graph(star))
    code, out, _ = run(capsys, "tw-bound", "--input", path, "--k", "2")
    assert code == 0
    td = parse_td(out)
    assert validate(star, td).ok and width(td) <= 4


def test_tw_bound_coloring(capsys, write):
    path = write("k4k4.lcp", emit_graph(generate("disjoint-cliques", 2, 4)))
    _, out, _ = run(capsys, "tw-bound", "--input", path, "--k", "3", "--format", "kv")
    kv = parse_kv(out)
    assert kv["decided_by"] == "width-lemma-coloring"
    assert int(kv["red_edges"]) >= 3 and int(kv["blue_edges"]) >= 3


def test_validate_td(capsys, write):
    g = write("c4.lcp", emit_graph(generate("cycle", 4)))
    bad = write("bad.td", "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n")
    code, out, _ = run(capsys, "validate-td", "--input", g, "--td", bad)
    assert code == 1 and "uncovered-edge" in out
    good = write("good.td", "s td 1 4 4\nb 1 1 2 3 4\n")
    code, out, _ = run(capsys, "validate-td", "--input", g, "--td", good)
    assert code == 0 and "width 3" in out


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "random-gnm", "10", "15", "--seed", "7")
    _, b, _ = run(capsys, "gen", "random-gnm", "10", "15", "--seed", "7")
    assert a == b and parse_graph(a).m == 15


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["gen", "nope"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_exit_code(capsys, write):
    path = write("bad.lcp", "p lcp 2 1\ne 1 1\n")
    code, _, err = run(capsys, "solve", "--input", path, "--k", "1")
    assert code == 2 and "line 2" in err


def test_missing_file(capsys):
    assert run(capsys, "oracle", "--input", "/nonexistent/graph.lcp")[0] == 2


def test_stdin_and_module_entry():
    text = emit_graph(generate("path", 6))
    proc = subprocess.run([sys.executable, "-m", "loadcolor.cli", "optimize", "--format", "kv"],
                          input=text, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert parse_kv(proc.stdout)["mu"] == "2"


def test_accept_quick_subset(capsys):
    code, out, _ = run(capsys, "accept", "--quick", "--only", "4", "5", "7")
    assert code == 0
    assert out.count("PASS") == 3
