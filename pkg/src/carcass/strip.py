"""Strips: the quotient of G by all (S1,S2)-mincuts, oriented as a balanced DAG."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvariantBreach
from .graphcore import MultiGraph, contract
from .maxflow import FlowResult, max_flow


@dataclass(frozen=True)
class Strip:
    graph: MultiGraph  # the graph the strip was built from
    quotient: MultiGraph
    phi: tuple  # vertex of graph -> strip vertex
    blocks: tuple  # strip vertex -> frozenset of graph vertices
    source_id: int
    sink_id: int
    orientation: tuple  # quotient edge i -> (tail, head)
    edge_origin: tuple  # quotient edge i -> graph edge indices
    edge_dir: dict  # graph edge index -> (tail, head) for every edge between blocks
    inherent_partition: dict  # non-terminal -> (in-edges, out-edges) as graph edge indices

    @property
    def nonterminals(self) -> list[int]:
        return [v for v in range(self.quotient.n) if v not in (self.source_id, self.sink_id)]

    def out_arcs(self, v: int):
        return [(t, h, self.quotient.edges[i][2]) for i, (t, h) in enumerate(self.orientation) if t == v]

    def in_arcs(self, v: int):
        return [(t, h, self.quotient.edges[i][2]) for i, (t, h) in enumerate(self.orientation) if h == v]

    def outdegree(self, v: int) -> int:
        return sum(w for _, _, w in self.out_arcs(v))

    def indegree(self, v: int) -> int:
        return sum(w for _, _, w in self.in_arcs(v))

    def cut_of(self, strip_vertices: Iterable[int]) -> frozenset:
        """Graph vertices of a set of strip vertices."""
        out = set()
        for x in strip_vertices:
            out |= self.blocks[x]
        return frozenset(out)


def _residual_components(g: MultiGraph, flow: FlowResult) -> np.ndarray:
    rows, cols = [], []
    for i, (u, v, w) in enumerate(g.edges):
        f = flow.flow[i]
        if f < w:
            rows.append(u)
            cols.append(v)
        if f > -w:
            rows.append(v)
            cols.append(u)
    mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(g.n, g.n))
    return connected_components(mat, directed=True, connection="strong")[1]


def assemble_strip(
    g: MultiGraph,
    blocks: Sequence[Iterable[int]],
    source_id: int,
    sink_id: int,
    edge_dir: dict | None = None,
) -> Strip:
    """Contract ``blocks`` and orient the quotient.

    With ``edge_dir`` (graph edge -> (tail block, head block)) the orientation is
    taken from it; otherwise it is recovered by :func:`orient_undirected_analogue`.
    """
    blocks = tuple(frozenset(b) for b in blocks)
    q = contract(g, blocks)
    if edge_dir is None:
        orientation = orient_undirected_analogue(q.graph, source_id, sink_id)
        edge_dir = {}
        for qi, origin in enumerate(q.edge_origin):
            t, h = orientation[qi]
            for e in origin:
                edge_dir[e] = (t, h)
    else:
        orientation = []
        for qi, origin in enumerate(q.edge_origin):
            dirs = {edge_dir[e] for e in origin}
            if len(dirs) != 1:
                raise InvariantBreach("parallel strip edges carry flow in opposite directions")
            orientation.append(dirs.pop())
        orientation = tuple(orientation)
    ins: dict[int, set] = {v: set() for v in range(q.graph.n)}
    outs: dict[int, set] = {v: set() for v in range(q.graph.n)}
    for e, (t, h) in edge_dir.items():
        outs[t].add(e)
        ins[h].add(e)
    inherent = {
        v: (frozenset(ins[v]), frozenset(outs[v])) for v in range(q.graph.n) if v not in (source_id, sink_id)
    }
    return Strip(g, q.graph, q.mapping, q.groups, source_id, sink_id, orientation, q.edge_origin, dict(edge_dir), inherent)


def build_strip(g: MultiGraph, s1: Iterable[int], s2: Iterable[int], flow: FlowResult | None = None) -> Strip:
    """Strip of all (S1,S2)-mincuts from the residual graph of one max flow.

    Pass ``flow`` to reuse an existing max flow between the same terminals.
    """
    s1, s2 = frozenset(s1), frozenset(s2)
    if s1 & s2:
        raise ValueError("overlapping terminal sets")
    if flow is None:
        flow = max_flow(g, s1, s2)
    elif flow.s1 != s1 or flow.s2 != s2:
        raise ValueError("flow was computed for different terminals")
    comp = _residual_components(g, flow)
    src, snk = flow.source_side, flow.sink_side
    middle: dict[int, set[int]] = {}
    for v in range(g.n):
        if v not in src and v not in snk:
            middle.setdefault(int(comp[v]), set()).add(v)
    blocks = [src] + sorted((frozenset(b) for b in middle.values()), key=min) + [snk]
    label = {}
    for bi, b in enumerate(blocks):
        for v in b:
            label[v] = bi
    edge_dir = {}
    for i, (u, v, w) in enumerate(g.edges):
        a, b = label[u], label[v]
        if a == b:
            continue
        f = flow.flow[i]
        if f == w:
            edge_dir[i] = (a, b)
        elif f == -w:
            edge_dir[i] = (b, a)
        else:
            raise InvariantBreach(f"edge {i} between strip vertices is not saturated")
    return assemble_strip(g, blocks, 0, len(blocks) - 1, edge_dir)


def orient_undirected_analogue(q: MultiGraph, source: int, sink: int) -> tuple:
    """Recover the balanced-DAG orientation from the undirected quotient.

    Kahn-style sweep from the source: a non-terminal becomes ready once half
    of its degree has been oriented into it. Ready vertices are served FIFO,
    ties by lowest id. Returns ``(tail, head)`` per quotient edge.
    """
    deg = [q.degree(v) for v in range(q.n)]
    for v in range(q.n):
        if v not in (source, sink) and deg[v] % 2:
            raise ValueError(f"non-terminal {v} has odd degree {deg[v]}")
    remaining = list(deg)
    orientation: list[tuple[int, int] | None] = [None] * len(q.edges)
    done = [False] * q.n
    queued = [False] * q.n
    queue = deque([source])
    queued[source] = True
    while queue:
        w = queue.popleft()
        done[w] = True
        ready = []
        for x, i in q.adjacency[w]:
            if orientation[i] is not None:
                continue
            if done[x] or x == source:
                raise ValueError("no balanced orientation: edge into a processed vertex")
            orientation[i] = (w, x)
            remaining[x] -= q.edges[i][2]
            if x != sink:
                if 2 * remaining[x] < deg[x]:
                    raise ValueError(f"no balanced orientation: vertex {x} has too many in-edges")
                if 2 * remaining[x] == deg[x] and not queued[x]:
                    queued[x] = True
                    ready.append(x)
        queue.extend(sorted(ready))
    if any(o is None for o in orientation):
        raise ValueError("no balanced orientation: the sweep stalled")
    return tuple(orientation)


def is_transversal(strip: Strip, u: Iterable[int]) -> bool:
    """True iff ``U`` holds the source, not the sink, and no edge enters ``U``."""
    u = set(u)
    if strip.source_id not in u or strip.sink_id in u:
        return False
    return all(not (h in u and t not in u) for t, h in strip.orientation)


def reachability_cone(strip: Strip, x: int, toward: str) -> frozenset:
    """Strip vertices reachable from ``x`` along (``toward='sink'``) or against (``'source'``) arcs."""
    if toward not in ("source", "sink"):
        raise ValueError("toward must be 'source' or 'sink'")
    nbrs: dict[int, list[int]] = {}
    for t, h in strip.orientation:
        a, b = (t, h) if toward == "sink" else (h, t)
        nbrs.setdefault(a, []).append(b)
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        for y in nbrs.get(v, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def strip_signature(strip: Strip):
    """Layout-free form for comparing strips: blocks, terminals, and per-edge direction."""
    b = strip.blocks
    return (
        frozenset(b),
        b[strip.source_id],
        b[strip.sink_id],
        frozenset((e, b[t], b[h]) for e, (t, h) in strip.edge_dir.items()),
    )
