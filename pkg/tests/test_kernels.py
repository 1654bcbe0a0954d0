import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from carcass import kernels
from carcass.graphcore import MultiGraph
from carcass.kernels import _pykernels

from generators import instances

BACKENDS = [_pykernels]
if kernels.compiled_backend is not None:
    BACKENDS.append(kernels.compiled_backend)


def _flow(backend, g, src, snk):
    start, arcs, head, cap = g.csr()
    role = np.zeros(g.n, dtype=np.int8)
    role[list(src)] = 1
    role[list(snk)] = 2
    return backend.dinic(g.n, start, arcs, head, cap.copy(), role)


def test_backend_name_is_reported():
    assert kernels.BACKEND_NAME in ("compiled", "python")


@given(instances)
def test_backends_agree_on_flow_values(ctx):
    g = ctx.graph
    s = sorted(ctx.steiner)
    values = {b.__name__: _flow(b, g, {s[0]}, set(s[1:])) for b in BACKENDS}
    assert len(set(values.values())) == 1


@given(instances)
def test_backends_agree_on_cut_capacities(ctx):
    g = ctx.graph
    eu = np.array([u for u, _, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v, _ in g.edges], dtype=np.int64)
    ew = np.array([w for *_, w in g.edges], dtype=np.int64)
    results = [np.asarray(b.cut_capacities(g.n, eu, ev, ew)) for b in BACKENDS]
    for r in results[1:]:
        assert np.array_equal(r, results[0])


@given(instances, st.integers(0, 2**16))
def test_cut_capacity_kernel_matches_direct_sum(ctx, pick):
    g = ctx.graph
    eu = np.array([u for u, _, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v, _ in g.edges], dtype=np.int64)
    ew = np.array([w for *_, w in g.edges], dtype=np.int64)
    caps = _pykernels.cut_capacities(g.n, eu, ev, ew)
    k = pick % (1 << (g.n - 1))
    inside = (k << 1) | 1
    direct = sum(w for u, v, w in g.edges if (inside >> u & 1) != (inside >> v & 1))
    assert caps[k] == direct


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
def test_parallel_edges_flow(backend):
    g = MultiGraph(2, [(0, 1, 3)])
    assert _flow(backend, g, {0}, {1}) == 3


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
def test_flow_is_written_back_into_capacities(backend):
    g = MultiGraph(3, [(0, 1, 1), (1, 2, 1)])
    start, arcs, head, cap = g.csr()
    cap = cap.copy()
    role = np.array([1, 0, 2], dtype=np.int8)
    assert backend.dinic(3, start, arcs, head, cap, role) == 1
    # both forward arcs are saturated
    assert sorted(cap.tolist()) == [0, 0, 2, 2]


def test_random_dense_graph_agrees():
    rng = random.Random(5)
    n = 30
    edges = {}
    for _ in range(120):
        u, v = rng.sample(range(n), 2)
        edges[(min(u, v), max(u, v))] = rng.randint(1, 5)
    g = MultiGraph(n, [(u, v, w) for (u, v), w in sorted(edges.items())])
    assert len({_flow(b, g, {0, 1}, {n - 1}) for b in BACKENDS}) == 1


def test_pure_python_fallback_gives_identical_output():
    import os
    import subprocess
    import sys

    from conftest import FIXTURES

    argv = [sys.executable, "-m", "carcass", "build", str(FIXTURES / "even_cycle.graph")]
    env = dict(os.environ, CARCASS_PURE_PYTHON="1")
    probe = [sys.executable, "-c", "from carcass.kernels import BACKEND_NAME; print(BACKEND_NAME)"]
    assert subprocess.run(probe, env=env, capture_output=True, text=True, check=True).stdout.strip() == "python"
    pure = subprocess.run(argv, env=env, capture_output=True, check=True).stdout
    default = subprocess.run(argv, capture_output=True, check=True).stdout
    assert pure == default


@pytest.mark.skipif(kernels.compiled_backend is None, reason="extension not built")
def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    module_spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(module_spec)
    module_spec.loader.exec_module(mod)
    assert mod.main(["--repeat", "1", "--sizes", "50", "--cut-sizes", "8"]) == 0
    assert "speedup=" in capsys.readouterr().out
