import subprocess
import sys

import pytest

from carcass.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return str(FIXTURES / f"{name}.graph")


def test_build_summary(capsys):
    assert run(capsys, "build", fx("p3"), "--summary")[:2] == (0, "lambda=1 units=3 skeleton_nodes=2 skeleton_edges=1\n")


def test_verify_c4_all_pass(capsys):
    code, out, _ = run(capsys, "verify", fx("c4"))
    assert code == 0
    assert "not ok" not in out and out.startswith("1..")


def test_sep(capsys):
    assert run(capsys, "sep", fx("p3"), "1", "2")[:2] == (0, "cut inside: 1 capacity: 1\n")


def test_sep_same_unit(capsys):
    assert run(capsys, "sep", fx("p3_pendant"), "1", "4")[:2] == (0, "none\n")


def test_full_build_report_lists_projection(capsys):
    code, out, _ = run(capsys, "build", fx("p3"))
    assert code == 0
    assert out.splitlines()[0] == "lambda=1 units=3 skeleton_nodes=2 skeleton_edges=1"
    assert "projection:" in out and "kind=stretched" in out


def test_strip_and_dst(capsys):
    code, out, _ = run(capsys, "dst", fx("c4"), "1", "3")
    assert code == 0
    assert out.splitlines()[:2] == ["source=1 vertices: 1", "sink=4 vertices: 3"]
    code, out, _ = run(capsys, "strip", fx("p3"), "1")
    assert code == 0 and out.count("arc") == 2


@pytest.mark.parametrize(
    "what, head",
    [("flesh", "graph flesh {"), ("skeleton", "graph skeleton {"), ("strip:1", "digraph strip {"), ("dst:1,3", "digraph dst {")],
)
def test_export(capsys, what, head):
    code, out, _ = run(capsys, "export", fx("c4"), "--what", what)
    assert code == 0 and out.startswith(head) and out.rstrip().endswith("}")


def test_export_styles(capsys):
    _, out, _ = run(capsys, "export", fx("c4"), "--what", "skeleton")
    assert "style=dashed" in out and "shape=point" in out
    _, out, _ = run(capsys, "export", fx("p3"), "--what", "strip:1")
    assert out.count("doublecircle") == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.txt"
    assert run(capsys, "build", fx("p3"), "--summary", "--out", str(target))[:2] == (0, "")
    assert target.read_text().startswith("lambda=1")


@pytest.mark.parametrize(
    "argv, code, message",
    [
        (["dst", "p3", "1", "2"], 1, "Steiner"),
        (["export", "p3", "--what", "strip:9"], 1, "no minimal cut"),
        (["sep", "p3", "1", "7"], 1, "out of range"),
        (["export", "p3", "--what", "bogus"], 1, "unknown export"),
        (["build", "missing"], 2, ""),
    ],
)
def test_error_exit_codes(capsys, argv, code, message):
    argv = [argv[0], fx(argv[1])] + argv[2:]
    got, _, err = run(capsys, *argv)
    assert got == code and message in err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("3 2 2\n1 2 1\n2 2 1\n1 3\n")
    code, _, err = run(capsys, "build", str(bad))
    assert code == 2 and "line 3" in err


def test_verify_bound_is_a_domain_error(capsys):
    assert run(capsys, "verify", fx("k4"), "--max-enum", "3")[0] == 1


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "carcass", "build", fx("even_cycle")]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
