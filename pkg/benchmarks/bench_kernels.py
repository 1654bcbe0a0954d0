"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 200,1000,4000]

Prints one key=value line per (kernel, size, backend). Both backends must
agree on every result; a mismatch aborts the run.
"""

import argparse
import random
import sys
import timeit

import numpy as np

from carcass import kernels
from carcass.graphcore import MultiGraph
from carcass.kernels import _pykernels


def random_graph(n, m, seed):
    rng = random.Random(seed)
    edges = {}
    for v in range(1, n):
        edges[(rng.randrange(v), v)] = rng.randint(1, 3)
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.randint(1, 3))
    return MultiGraph(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


def flow_job(backend, g):
    start, arcs, head, cap = g.csr()
    role = np.zeros(g.n, dtype=np.int8)
    role[0] = 1
    role[g.n - 1] = 2

    def run():
        return backend.dinic(g.n, start, arcs, head, cap.copy(), role)

    return run


def cut_job(backend, n, seed):
    g = random_graph(n, 3 * n, seed)
    eu = np.array([u for u, _, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v, _ in g.edges], dtype=np.int64)
    ew = np.array([w for *_, w in g.edges], dtype=np.int64)

    def run():
        return np.asarray(backend.cut_capacities(n, eu, ev, ew)).sum()

    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="200,1000,4000", help="vertex counts for the max-flow kernel")
    ap.add_argument("--cut-sizes", default="12,16,18", help="vertex counts for exhaustive cut capacities")
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled backend not available; build the extension first", file=sys.stderr)
        return 1
    backends = {"python": _pykernels, "compiled": kernels.compiled_backend}
    jobs = []
    for n in map(int, args.sizes.split(",")):
        g = random_graph(n, 4 * n, n)
        jobs.append(("dinic", n, {k: flow_job(b, g) for k, b in backends.items()}))
    for n in map(int, args.cut_sizes.split(",")):
        jobs.append(("cut_capacities", n, {k: cut_job(b, n, n) for k, b in backends.items()}))
    for kernel, n, runs in jobs:
        results = {k: run() for k, run in runs.items()}
        if len(set(map(int, results.values()))) != 1:
            print(f"mismatch kernel={kernel} n={n} {results}", file=sys.stderr)
            return 2
        times = {k: min(timeit.repeat(run, number=1, repeat=args.repeat)) for k, run in runs.items()}
        for k, t in times.items():
            print(f"kernel={kernel} n={n} backend={k} seconds={t:.6f}")
        print(f"kernel={kernel} n={n} speedup={times['python'] / times['compiled']:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
