import pytest
from hypothesis import given

from carcass.errors import GraphFormatError
from carcass.graphcore import (
    MultiGraph,
    VertexCut,
    contract,
    cut_capacity,
    dump_graph,
    load_graph,
    partition_by_signature,
    quotient_by_cut_family,
    read_graph_file,
)

from conftest import load
from generators import instances


def test_p3_parses():
    ctx = load_graph("3 2 2\n1 2 1\n2 3 1\n1 3")
    assert ctx.graph.n == 3
    assert ctx.graph.edges == ((0, 1, 1), (1, 2, 1))
    assert ctx.steiner == {0, 2}


def test_parallel_edges_keep_multiplicity():
    ctx = load_graph("2 1 2\n1 2 3\n1 2")
    assert ctx.graph.edges == ((0, 1, 3),)
    assert ctx.graph.m == 3


def test_c4_all_steiner():
    ctx = load_graph("4 4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1\n1 2 3 4")
    assert ctx.steiner == frozenset(range(4))


def test_comments_and_blank_lines_are_skipped():
    ctx = load_graph("# a comment\n\n3 2 2\n# edges\n1 2 1\n2 3 1\n\n1 3\n")
    assert ctx.graph.n == 3


def test_bytes_input():
    assert load_graph(b"3 2 2\n1 2 1\n2 3 1\n1 3").graph.n == 3


@pytest.mark.parametrize(
    "text, needle, line",
    [
        ("3 2 1\n1 2 1\n2 3 1\n1", "|S| < 2", 4),
        ("3 1 2\n1 2 1\n1 3", "disconnected", None),
        ("3 2 2\n1 2 1\n2 2 1\n1 3", "self-loop", 3),
        ("3 2 2\n1 2 1\n2 4 1\n1 3", "range", 3),
        ("3 2 2\n1 2 0\n2 3 1\n1 3", "multiplicity", 2),
        ("3 2 2\n1 2 1\n2 3 1\n1 1", "duplicate", 4),
        ("3 x 2\n1 2 1", "integers", 1),
        ("3 2 2\n1 2 1\n1 3", None, None),
    ],
)
def test_malformed_input(text, needle, line):
    with pytest.raises(GraphFormatError) as info:
        load_graph(text)
    if needle:
        assert needle in str(info.value)
    if line is not None:
        assert info.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(GraphFormatError):
        read_graph_file(tmp_path / "nope.graph")


def test_cut_capacity_examples():
    p3, c4 = load("p3").graph, load("c4").graph
    assert cut_capacity(p3, {0}) == 1
    assert cut_capacity(c4, {0, 2}) == 4
    assert cut_capacity(c4, {0, 1}) == 2
    assert cut_capacity(c4, VertexCut(frozenset({0, 1}), 4)) == 2


def test_contract_examples():
    p3, c4 = load("p3").graph, load("c4").graph
    q = contract(p3, [{0}, {1, 2}])
    assert (q.graph.n, q.graph.edges) == (2, ((0, 1, 1),))
    q = contract(c4, [{0, 1}, {2, 3}])
    assert (q.graph.n, q.graph.edges) == (2, ((0, 1, 2),))
    q = contract(c4, [{0}, {1}, {2}, {3}])
    assert q.graph.n == 4 and q.graph.m == 4


def test_contract_accepts_label_lists():
    c4 = load("c4").graph
    assert contract(c4, [0, 0, 1, 1]).graph.edges == contract(c4, [{0, 1}, {2, 3}]).graph.edges


def test_signature_partition():
    assert partition_by_signature(3, [{0}]) == [frozenset({0}), frozenset({1, 2})]


def test_empty_family_is_degenerate():
    q = quotient_by_cut_family(load("p3").graph, [])
    assert q.degenerate and q.graph.n == 1


def test_vertex_cut_helpers():
    c = VertexCut(frozenset({1, 2}), 4)
    assert c.outside == {0, 3}
    assert c.canonical().inside == {0, 3}
    assert c.opposite().inside == {0, 3}
    assert c.separates({1}, {3}) and not c.separates({1}, {2})
    assert c.divides({0, 1}) and not c.divides({1, 2})


@given(instances)
def test_dump_load_round_trip(ctx):
    back = load_graph(dump_graph(ctx))
    assert back.graph.edges == ctx.graph.edges
    assert back.steiner == ctx.steiner


@given(instances)
def test_contraction_preserves_crossing_weight(ctx):
    g = ctx.graph
    groups = partition_by_signature(g.n, [ctx.steiner])
    q = contract(g, groups)
    assert q.graph.m == cut_capacity(g, ctx.steiner)
    assert sum(len(o) for o in q.edge_origin) == sum(1 for u, v, _ in g.edges if (u in ctx.steiner) != (v in ctx.steiner))


def test_repeated_edge_lines_add_up():
    ctx = load_graph("2 2 2\n1 2 1\n2 1 2\n1 2")
    assert ctx.graph.edges == ((0, 1, 3),)


def test_graph_rejects_self_loops():
    with pytest.raises(ValueError):
        MultiGraph(2, [(1, 1, 1)])
