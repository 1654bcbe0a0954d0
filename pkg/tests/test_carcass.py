import pytest
from hypothesis import given

from carcass.carcass import STRETCHED, TERMINAL, build_carcass, build_flesh, project_coherent_path, project_edge
from carcass.errors import DomainError
from carcass.oracle import check_carcass, enumerate_all

from conftest import load
from generators import instances


def test_p3_units_and_kinds():
    car = build_carcass(load("p3"))
    assert car.flesh.unit_kind[car.unit_of(1)] == STRETCHED
    a, b = car.pi.path[car.unit_of(1)]
    assert car.pi.dump().splitlines()[car.unit_of(1)] == f"{car.unit_of(1)} -> ({a},{b})"


def test_projection_dump_format():
    car = build_carcass(load("star"))
    lines = car.pi.dump(base=1).splitlines()
    assert len(lines) == 4
    assert all(" -> " in line for line in lines)
    centre = car.unit_of(3)
    assert car.flesh.unit_kind[centre] == TERMINAL
    assert lines[centre] == f"{centre + 1} -> {car.pi.node[centre] + 1}"


def test_two_vertex_units():
    assert len(build_flesh(load("two_vertex")).units) == 2


def test_chain_middles_land_on_different_edges():
    car = build_carcass(load("chain"))
    a, b = car.pi.endpoints(car.unit_of(1)), car.pi.endpoints(car.unit_of(3))
    assert {a[0], a[1]} != {b[0], b[1]}
    for ends in (a, b):
        assert len(car.skeleton.tree.proper_path_edges(*ends)) == 1


def test_even_cycle_unit_uses_one_cycle_edge():
    car = build_carcass(load("even_cycle"))
    seq = car.skeleton.tree.proper_path_edges(*car.pi.path[car.unit_of(4)])
    assert [car.skeleton.edges[e].kind for e in seq] == ["tree", "cycle", "tree"]


def test_project_edge_errors():
    car = build_carcass(load("p3"))
    with pytest.raises(DomainError):
        project_edge(car, 0, 0)
    with pytest.raises(DomainError):
        project_edge(car, 0, 2)


def test_coherent_path_p3():
    car = build_carcass(load("p3"))
    p, q = project_coherent_path(car, [0, 1, 2])
    assert len(car.skeleton.tree.proper_path_edges(p, q)) == 1


def test_incoherent_path_rejected():
    car = build_carcass(load("star"))
    leaf, centre = car.unit_of(0), car.unit_of(3)
    with pytest.raises(DomainError):
        project_coherent_path(car, [leaf, centre, car.unit_of(1)])


def test_build_is_deterministic():
    a = build_carcass(load("even_cycle"))
    b = build_carcass(load("even_cycle"))
    assert a.pi == b.pi and a.flesh.units == b.flesh.units
    assert [(e.u, e.v, e.kind) for e in a.skeleton.edges] == [(e.u, e.v, e.kind) for e in b.skeleton.edges]


@given(instances)
def test_random_instances_pass_every_check(ctx):
    car = build_carcass(ctx)
    bad = [v for v in check_carcass(ctx, car, enumerate_all(ctx)) if not v.ok]
    assert not bad


@given(instances)
def test_steiner_units_are_never_distinguished(ctx):
    car = build_carcass(ctx)
    for u in range(len(car.flesh.units)):
        if car.flesh.is_steiner_unit(u):
            assert not any(car.distinguishes(c, u) for c in car.skeleton.cuts)
            assert u in car.pi.node
