"""Integer max flow between vertex-set terminals, plus tight and loose mincuts.

Terminal sets are contracted virtually: every vertex of ``S1`` is a source and
every vertex of ``S2`` a sink for the blocking-flow kernel.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .graphcore import MultiGraph, SteinerContext, VertexCut

_calls = 0


def flow_calls() -> int:
    """Number of :func:`max_flow` invocations since import (instrumentation)."""
    return _calls


@dataclass(frozen=True)
class FlowResult:
    value: int
    flow: tuple  # net flow on edge i from edges[i][0] towards edges[i][1]
    source_side: frozenset  # reachable from S1 in the residual graph
    sink_side: frozenset  # can reach S2 in the residual graph
    s1: frozenset
    s2: frozenset

    def residual_out(self, g: MultiGraph, u: int):
        """Neighbours ``v`` with a residual arc ``u -> v``."""
        for v, i in g.adjacency[u]:
            a, _, w = g.edges[i]
            f = self.flow[i] if a == u else -self.flow[i]
            if f < w:
                yield v


def max_flow(g: MultiGraph, s1: Iterable[int], s2: Iterable[int]) -> FlowResult:
    global _calls
    s1, s2 = frozenset(s1), frozenset(s2)
    if not s1 or not s2:
        raise ValueError("terminal sets must be nonempty")
    if s1 & s2:
        raise ValueError("overlapping terminal sets")
    _calls += 1
    start, arcs, head, cap0 = g.csr()
    cap = cap0.copy()
    role = np.zeros(g.n, dtype=np.int8)
    role[list(s1)] = 1
    role[list(s2)] = 2
    value = int(kernels.dinic(g.n, start, arcs, head, cap, role))
    flow = tuple(int(w - cap[2 * i]) for i, (_, _, w) in enumerate(g.edges))

    fwd = [[] for _ in range(g.n)]
    back = [[] for _ in range(g.n)]
    for i, (u, v, w) in enumerate(g.edges):
        f = flow[i]
        if f < w:
            fwd[u].append(v)
            back[v].append(u)
        if f > -w:
            fwd[v].append(u)
            back[u].append(v)
    return FlowResult(value, flow, _closure(s1, fwd), _closure(s2, back), s1, s2)


def _closure(seeds, nbrs) -> frozenset:
    seen = set(seeds)
    queue = deque(sorted(seeds))
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def tight_mincut(g: MultiGraph, s1, s2) -> VertexCut:
    """Intersection of all (S1,S2)-mincuts."""
    return VertexCut(max_flow(g, s1, s2).source_side, g.n)


def loose_mincut(g: MultiGraph, s1, s2) -> VertexCut:
    """Union of all (S1,S2)-mincuts."""
    return VertexCut(frozenset(range(g.n)) - max_flow(g, s1, s2).sink_side, g.n)


def steiner_lambda(ctx: SteinerContext) -> tuple[int, dict[int, FlowResult]]:
    """Steiner connectivity via ``|S| - 1`` flows from the anchor; stores it on ``ctx``."""
    x = ctx.anchor
    flows = {y: max_flow(ctx.graph, {x}, {y}) for y in ctx.steiner_sorted if y != x}
    ctx.lam = min(f.value for f in flows.values())
    return ctx.lam, flows
