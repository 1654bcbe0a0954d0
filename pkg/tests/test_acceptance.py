"""One test per acceptance criterion. Each prints a single PASS/FAIL line,
which is also repeated in the pytest terminal summary."""

import io
import time
from collections import Counter
from contextlib import redirect_stdout

import pytest

import conftest
from carcass import cli
from carcass.carcass import build_carcass
from carcass.graphcore import VertexCut
from carcass.maxflow import flow_calls
from carcass.oracle import check_carcass, enumerate_all, flow_budget, transversal_cuts
from carcass.queries import strip_for_minimal_cut
from derived import FACTS
from generators import suite

FIXTURE_NAMES = ("p3", "star", "c4", "k4", "two_vertex", "even_cycle", "p3_pendant", "two_stars", "chain", "c5")

_cache = {}


def corpus():
    """The randomized suite of criterion 2: (ctx, carcass, oracle report) triples."""
    if "suite" not in _cache:
        out = []
        for ctx in suite(300):
            out.append((ctx, build_carcass(ctx), enumerate_all(ctx)))
        _cache["suite"] = out
    return _cache["suite"]


def fixtures():
    if "fixtures" not in _cache:
        out = []
        for name in FIXTURE_NAMES:
            ctx = conftest.load(name)
            out.append((ctx, build_carcass(ctx), enumerate_all(ctx)))
        _cache["fixtures"] = out
    return _cache["fixtures"]


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


def run_anchors(triples, anchors):
    bad = []
    for ctx, car, rep in triples:
        for v in check_carcass(ctx, car, rep, anchors=anchors):
            if not v.ok:
                bad.append(f"{v.anchor}: {v.detail} on n={ctx.graph.n} edges={ctx.graph.edges} S={sorted(ctx.steiner)}")
    return bad


def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_criterion_1_fixture_suite():
    start = time.perf_counter()
    mismatched = []
    for fact in FACTS:
        if fact.oracle() != fact.frozen:
            mismatched.append(f"oracle drifted on {fact.name}")
        if fact.library() != fact.frozen:
            mismatched.append(f"library differs on {fact.name}")
    p3 = str(conftest.FIXTURES / "p3.graph")
    c4 = str(conftest.FIXTURES / "c4.graph")
    if _cli(["build", p3, "--summary"]) != (0, "lambda=1 units=3 skeleton_nodes=2 skeleton_edges=1\n"):
        mismatched.append("cli build summary")
    if _cli(["sep", p3, "1", "2"]) != (0, "cut inside: 1 capacity: 1\n"):
        mismatched.append("cli sep")
    code, text = _cli(["verify", c4])
    if code != 0 or "not ok" in text:
        mismatched.append("cli verify")
    elapsed = time.perf_counter() - start
    ok = not mismatched and elapsed < 1.0
    report(1, ok, f"{len(FACTS) + 3} fixture values, {len(mismatched)} mismatches, {elapsed:.2f}s" + (f" {mismatched[:3]}" if mismatched else ""))


def test_criterion_2_random_oracle_equivalence():
    start = time.perf_counter()
    _cache.pop("suite", None)
    triples = corpus()
    bad = []
    for ctx, car, rep in triples:
        g = ctx.graph
        assert 3 <= g.n <= 8 and len(g.edges) <= 14 and all(1 <= w <= 3 for *_, w in g.edges) and 2 <= len(ctx.steiner) <= g.n
        if car.lam != rep.lam:
            bad.append("lambda")
        if sorted(car.flesh.units, key=min) != rep.unit_partition:
            bad.append("units")
        mine = set()
        for c in car.skeleton.cuts:
            for inside in transversal_cuts(strip_for_minimal_cut(car, c)):
                mine.add(VertexCut(inside, g.n).canonical().inside)
        if mine != {c.canonical().inside for c in rep.all_s_mincuts}:
            bad.append("transversal cuts")
        counts = Counter(car.valid_cuts.key(c.side) for c in car.skeleton.minimal_cuts(include_adjacent=True))
        if set(counts) != set(rep.bunches) or not all(1 <= m <= 3 for m in counts.values()):
            bad.append("minimal-cut multiset")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(2, ok, f"{len(triples)} random instances, {len(bad)} mismatches {sorted(set(bad))}, {elapsed:.1f}s")


def test_criterion_3_projection_exactness():
    triples = corpus()
    stretched = sum(k == "stretched" for _, car, _ in triples for k in car.flesh.unit_kind)
    terminal = sum(k == "terminal" for _, car, _ in triples for k in car.flesh.unit_kind)
    edges = sum(len(car.flesh.quotient.edges) for _, car, _ in triples)
    bad = run_anchors(
        triples,
        {
            "stretched-unit-projection-is-distinguishing-set",
            "at-most-one-cycle-edge-per-projection",
            "terminal-unit-projection",
            "edge-projection-matches-subdivision",
            "unidirectionality",
        },
    )
    report(3, not bad, f"{stretched} stretched units, {terminal} terminal non-Steiner units, {edges} flesh edges, {len(bad)} failures {bad[:2]}")


def test_criterion_4_strip_laws():
    triples = corpus()
    strips = sum(len(car.skeleton.cuts) for _, car, _ in triples)
    bad = run_anchors(
        triples,
        {
            "orientation-round-trip",
            "strip-balance",
            "inherent-partition-unique",
            "strip-for-minimal-cut-equals-flow-strip",
            "distinctness-of-distinguished-units",
        },
    )
    report(4, not bad, f"{strips} strips, {len(bad)} failures {bad[:2]}")


def test_criterion_5_query_correctness():
    triples = corpus()
    bad = run_anchors(triples, {"separating-mincut-reports", "dst-equals-flow-strip", "hst-cuts-are-separating-valid-cuts"})
    report(5, not bad, f"{len(triples)} instances, {len(bad)} failures {bad[:2]}")


STRUCTURAL = (
    "P1-leaf-holds-indivisible-valid-cut",
    "P2-cycles-have-4-plus-edges-and-empty-degree-3-nodes",
    "P3-empty-tree-node-degree-3-plus",
    "ring-constraints",
    "forbidden-combinations",
    "crossing-family-law",
    "four-point-inequality",
    "laminar-count-at-most-2S",
    "disjoint-steiner-sides-have-empty-triple-intersection",
    "proper-paths-are-unique",
)


def test_criterion_6_structural_invariants():
    triples = fixtures() + corpus()
    bad = run_anchors(triples, set(STRUCTURAL))
    cycles = sum(len(car.skeleton.cycles) for _, car, _ in triples)
    report(6, not bad, f"{len(STRUCTURAL)} anchors on {len(triples)} instances ({cycles} skeleton cycles), {len(bad)} failures {bad[:2]}")


def test_criterion_7_flow_call_budget():
    over, query_calls = [], 0
    for ctx, _, _ in fixtures() + corpus():
        before = flow_calls()
        car = build_carcass(ctx)
        used = flow_calls() - before
        if used != car.build_flow_calls or used > flow_budget(car):
            over.append((ctx.graph.n, used, flow_budget(car)))
        before = flow_calls()
        check_carcass(ctx, car, enumerate_all(ctx), anchors={"flow-call-budget"})
        query_calls += flow_calls() - before
    ok = not over and query_calls == 0
    report(7, ok, f"{len(over)} builds over budget, {query_calls} max-flow calls during queries")


@pytest.mark.parametrize("anchor", STRUCTURAL)
def test_structural_anchor_on_fixtures(anchor):
    assert not run_anchors(fixtures(), {anchor}), anchor
