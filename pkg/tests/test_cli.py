from __future__ import annotations

import io
import subprocess
import sys

import pytest

from spcolor.cli import format_graph, parse_coloring, parse_graph, run
from spcolor.errors import ParseError
from spcolor.oracle import gen_sp
from support import complete, cycle, triangle


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def test_graph_round_trip():
    g = gen_sp(25, 4, 3)
    assert parse_graph(format_graph(g, "comment")) == g


def test_parse_graph_is_one_based():
    g = parse_graph("c hi\np spm 3 2\ne 1 2 4\n\ne 3 2 1\n")
    assert g.class_map() == {(0, 1): 4, (1, 2): 1}


@pytest.mark.parametrize(
    "text, line",
    [
        ("p spm 2 1\ne 1 2\n", 2),
        ("p spm 2 1\ne 1 1 1\n", 2),
        ("p spm 2 2\ne 1 2 1\ne 2 1 1\n", 3),
        ("p spm 2 1\ne 1 3 1\n", 2),
        ("p spm 2 1\ne 1 2 0\n", 2),
        ("p spm 2 1\nx\n", 2),
        ("e 1 2 1\n", 1),
        ("p spm 2 1\np spm 2 1\n", 2),
        ("p spm 2 x\n", 1),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError, match=f"^line {line}: "):
        parse_graph(text)


@pytest.mark.parametrize("text", ["", "p spm 2 2\ne 1 2 1\n"])
def test_parse_errors_without_line(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_decide_yes_and_no(write):
    path = write("t.g", format_graph(triangle(2, 1, 1)))
    assert call("decide", "-k", "4", path) == (0, "YES\n", "")
    code, out, _ = call("decide", "-k", "3", path)
    assert code == 1
    assert out == "NO local-check 2|E({1,2,3})| = 8 > 3*2\n"


def test_decide_degree_reason(write):
    path = write("t.g", format_graph(triangle(2, 1, 1)))
    assert call("decide", "-k", "2", path) == (1, "NO degree deg(1) = 3 > k\n", "")


def test_decide_not_series_parallel(write):
    path = write("k4.g", format_graph(complete(4)))
    code, out, _ = call("decide", "-k", "5", path)
    assert code == 3 and out == "NOT-SERIES-PARALLEL\n"


def test_color_then_verify(write, tmp_path):
    graph = write("c5.g", format_graph(cycle(5, 3)))
    colored = str(tmp_path / "c5.col")
    assert call("color", "-k", "8", "-o", colored, graph) == (0, "YES\n", "")
    k, col = parse_coloring(open(colored).read())
    assert k == 8 and len(col) == 5
    assert call("verify", graph, colored) == (0, "VALID\n", "")


def test_color_to_stdout(write):
    graph = write("t.g", format_graph(triangle(2, 1, 1)))
    code, out, _ = call("color", "-k", "4", graph)
    assert code == 0 and out.startswith("s YES k=4\n")
    assert call("color", "-k", "3", graph)[0] == 1


def test_verify_rejects_tampered_coloring(write):
    graph = write("t.g", format_graph(triangle(1, 1, 1)))
    bad = write("t.col", "s YES k=3\ne 1 2 1 c 1\ne 2 3 1 c 1\ne 1 3 1 c 2\n")
    code, out, _ = call("verify", graph, bad)
    assert code == 1
    assert out == "INVALID vertex 2 sees color 1 twice\n"


def test_verify_rejects_wrong_classes(write):
    graph = write("t.g", format_graph(triangle(1, 1, 1)))
    bad = write("t.col", "s YES k=3\ne 1 2 1 c 1\n")
    assert call("verify", graph, bad)[0] == 1


def test_chi_paths(write):
    sp = write("t.g", format_graph(triangle(2, 1, 1)))
    assert call("chi", sp) == (0, "4\n", "path: reducer\n")
    k4 = write("k4.g", format_graph(complete(4)))
    code, out, err = call("chi", k4)
    assert (code, out) == (0, "3\n") and "oracle" in err
    big = write("k5.g", format_graph(complete(5, 3)))
    assert call("chi", "--max-edges", "5", big)[0] == 3


def test_gamma_prints_exact_rational(write):
    path = write("c5.g", format_graph(cycle(5, 3)))
    assert call("gamma", path) == (0, "15/2 U={1,2,3,4,5}\n", "")
    tri = write("t.g", format_graph(triangle(2, 1, 1)))
    assert call("gamma", "--pruned", tri) == (0, "4/1 U={1,2,3}\n", "")


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.g", tmp_path / "b.g"
    assert call("gen", "-n", "12", "--max-mult", "3", "--seed", "5", "-o", str(a))[0] == 0
    assert call("gen", "-n", "12", "--max-mult", "3", "--seed", "5", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert parse_graph(a.read_text()) == gen_sp(12, 3, 5)


def test_selftest_passes():
    code, out, _ = call("selftest", "--instances", "30", "--max-vertices", "7", "--seed", "3")
    assert code == 0 and "0 mismatches" in out


def test_bench_reports_potentials():
    code, out, _ = call("bench", "--sizes", "200,400", "--repeats", "1")
    header, *rows = out.strip().splitlines()
    assert code == 0 and header.split()[0] == "n" and len(rows) == 2
    for row in rows:
        n, classes, seconds, iterations, initial, final = row.split()
        assert int(final) == 0 and int(initial) > int(iterations) > 0


def test_usage_and_parse_errors(write):
    assert call()[0] == 2
    assert call("decide", "missing.g")[0] == 2
    assert call("decide", "-k", "3", "/nonexistent/file.g")[0] == 2
    bad = write("bad.g", "p spm 2 1\ne 1 1 1\n")
    code, _, err = call("decide", "-k", "3", bad)
    assert code == 2 and "line 2" in err


def test_module_entry_point(write):
    path = write("t.g", format_graph(triangle(2, 1, 1)))
    done = subprocess.run([sys.executable, "-m", "spcolor.cli", "decide", "-k", "4", path], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "YES\n"
