import dataclasses

import pytest
from hypothesis import given

from carcass.carcass import ProjectionMapping, build_carcass
from carcass.errors import DomainError
from carcass.graphcore import load_graph
from carcass.oracle import (
    anchor_names,
    capacity_table,
    check_carcass,
    disjoint_triples_empty,
    enumerate_all,
    four_point_holds,
    four_point_violation,
    st_mincuts,
    subdivide,
    tap,
)
from carcass.skeleton import CYCLE, Skeleton

from conftest import load
from generators import instances

ALL_FIXTURES = ("p3", "star", "c4", "k4", "two_vertex", "even_cycle", "p3_pendant", "two_stars", "chain", "c5")


def _failed(verdicts):
    return {v.anchor for v in verdicts if not v.ok}


def test_two_vertex_report():
    rep = enumerate_all(load("two_vertex"))
    assert rep.lam == 3 and len(rep.mincut_masks) == 1


def test_oracle_refuses_large_graphs():
    n = 21
    text = f"{n} {n - 1} 2\n" + "".join(f"{i} {i + 1} 1\n" for i in range(1, n)) + "1 2"
    with pytest.raises(DomainError):
        enumerate_all(load_graph(text))


def test_subdivision_adds_one_vertex():
    ctx = load("p3")
    sub = subdivide(ctx, 0)
    assert sub.graph.n == 4 and sub.graph.m == 3
    assert enumerate_all(sub).lam == 1


def test_st_mincuts_p3():
    assert st_mincuts(load("p3").graph, {0}, {2}) == (1, [frozenset({0}), frozenset({0, 1})])


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_bundled_fixtures_pass_every_check(name):
    ctx = load(name)
    verdicts = check_carcass(ctx, build_carcass(ctx))
    assert [v.anchor for v in verdicts] == anchor_names()
    assert not _failed(verdicts)


def test_corrupted_projection_is_caught():
    ctx = load("even_cycle")
    car = build_carcass(ctx)
    (unit, (a, b)), = car.pi.path.items()
    leaves = [nd.id for nd in car.skeleton.nodes if nd.steiner and nd.id not in (a, b)]
    bad = ProjectionMapping(dict(car.pi.node), {unit: (leaves[0], b)})
    failed = _failed(check_carcass(ctx, dataclasses.replace(car, pi=bad)))
    assert "stretched-unit-projection-is-distinguishing-set" in failed


def test_dropped_cycle_edge_is_caught():
    ctx = load("c4")
    car = build_carcass(ctx)
    sk = car.skeleton
    assert sk.edges[-1].kind == CYCLE
    broken = Skeleton(sk.nodes, sk.edges[:-1], sk.cycles, sk.cycle_edges, sk.steiner)
    failed = _failed(check_carcass(ctx, dataclasses.replace(car, skeleton=broken)))
    assert "P2-cycles-have-4-plus-edges-and-empty-degree-3-nodes" in failed


def test_tap_format():
    ctx = load("p3")
    text = tap(check_carcass(ctx, build_carcass(ctx)))
    lines = text.splitlines()
    assert lines[0] == f"1..{len(anchor_names())}"
    assert lines[1] == "ok 1 - lambda-matches-oracle"
    assert all(line.startswith("ok ") for line in lines[1:])


def test_tap_reports_failures_with_detail():
    from carcass.oracle import Verdict

    assert tap([Verdict("x", False, "why")]) == "1..1\nnot ok 1 - x # why\n"


@given(instances)
def test_vectorised_four_point_agrees_with_scalar(ctx):
    g = ctx.graph
    caps = capacity_table(g)
    full = (1 << g.n) - 1
    sides = sorted(caps)[:12]
    scalar = all(four_point_holds(g, a, b, c, caps) for a in sides for b in sides for c in sides)
    assert scalar == (four_point_violation(g, sides) is None)
    assert scalar


@given(instances)
def test_disjoint_triples(ctx):
    assert disjoint_triples_empty(enumerate_all(ctx))


@given(instances)
def test_units_are_separation_classes(ctx):
    rep = enumerate_all(ctx)
    units = rep.unit_partition
    for i, u in enumerate(units):
        for v in units[i + 1 :]:
            assert rep.separated(min(u), min(v))
        assert not any(rep.separated(min(u), x) for x in u)
