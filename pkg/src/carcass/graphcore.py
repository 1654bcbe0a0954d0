"""Multigraphs with integer multiplicities, vertex cuts, contraction, and the text format.

Vertex ids are 0-based internally and 1-based in files and on the command line.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphFormatError


class MultiGraph:
    """Undirected multigraph; each edge is ``(u, v, w)`` with multiplicity ``w >= 1``."""

    __slots__ = ("n", "edges", "adjacency", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        self.n = n
        self.edges = tuple((int(u), int(v), int(w)) for u, v, w in edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {idx} has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {idx} is a self-loop")
            if w < 1:
                raise ValueError(f"edge {idx} has multiplicity {w}")
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self._csr = None

    @property
    def m(self) -> int:
        """Number of edge instances, counting multiplicity."""
        return sum(w for _, _, w in self.edges)

    def degree(self, v: int) -> int:
        return sum(self.edges[i][2] for _, i in self.adjacency[v])

    def other(self, idx: int, v: int) -> int:
        u, x, _ = self.edges[idx]
        return x if v == u else u

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def csr(self):
        """Arc arrays for the flow kernel: arcs ``2i`` (u->v) and ``2i+1`` (v->u) per edge ``i``."""
        if self._csr is None:
            n = self.n
            head = np.empty(2 * len(self.edges), dtype=np.int64)
            cap = np.empty(2 * len(self.edges), dtype=np.int64)
            per_vertex: list[list[tuple[int, int]]] = [[] for _ in range(n)]
            for i, (u, v, w) in enumerate(self.edges):
                head[2 * i], head[2 * i + 1] = v, u
                cap[2 * i] = cap[2 * i + 1] = w
                per_vertex[u].append((v, 2 * i))
                per_vertex[v].append((u, 2 * i + 1))
            start = np.zeros(n + 1, dtype=np.int64)
            order: list[int] = []
            for v in range(n):
                # lowest neighbour id first keeps augmenting paths reproducible
                order.extend(a for _, a in sorted(per_vertex[v]))
                start[v + 1] = len(order)
            self._csr = (start, np.asarray(order, dtype=np.int64), head, cap)
        return self._csr

    def __eq__(self, other):
        return isinstance(other, MultiGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class VertexCut:
    """Ordered cut ``(A, V \\ A)`` given by its inside ``A``."""

    inside: frozenset
    n: int

    def __post_init__(self):
        object.__setattr__(self, "inside", frozenset(self.inside))
        if not self.inside or len(self.inside) >= self.n:
            raise ValueError("a cut needs a nonempty proper inside")
        if min(self.inside) < 0 or max(self.inside) >= self.n:
            raise ValueError("cut vertex out of range")

    @property
    def outside(self) -> frozenset:
        return frozenset(range(self.n)) - self.inside

    def opposite(self) -> "VertexCut":
        return VertexCut(self.outside, self.n)

    def divides(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return bool(vs & self.inside) and bool(vs - self.inside)

    def separates(self, a: Iterable[int], b: Iterable[int]) -> bool:
        a, b = set(a), set(b)
        return (a <= self.inside and not (b & self.inside)) or (b <= self.inside and not (a & self.inside))

    def canonical(self) -> "VertexCut":
        """The orientation whose inside holds vertex 0."""
        return self if 0 in self.inside else self.opposite()

    def sorted_inside(self) -> list[int]:
        return sorted(self.inside)


@dataclass
class SteinerContext:
    graph: MultiGraph
    steiner: frozenset
    lam: int | None = None

    def __post_init__(self):
        self.steiner = frozenset(self.steiner)
        if len(self.steiner) < 2:
            raise GraphFormatError("|S| < 2")
        if not all(0 <= s < self.graph.n for s in self.steiner):
            raise GraphFormatError("vertex id out of range")

    @property
    def anchor(self) -> int:
        """Lowest-id Steiner vertex."""
        return min(self.steiner)

    @property
    def steiner_sorted(self) -> list[int]:
        return sorted(self.steiner)


def cut_capacity(g: MultiGraph, inside: Iterable[int] | VertexCut) -> int:
    a = inside.inside if isinstance(inside, VertexCut) else set(inside)
    return sum(w for u, v, w in g.edges if (u in a) != (v in a))


@dataclass(frozen=True)
class Quotient:
    """Result of contracting groups of vertices into single vertices."""

    graph: MultiGraph
    mapping: tuple  # vertex -> group id
    groups: tuple  # group id -> frozenset of vertices
    edge_origin: tuple  # quotient edge -> tuple of original edge indices
    degenerate: bool = False


def _labels_from_groups(n: int, groups) -> list[int]:
    label = [-1] * n
    for gid, grp in enumerate(groups):
        for v in grp:
            if not 0 <= v < n:
                raise ValueError("group vertex out of range")
            if label[v] >= 0:
                raise ValueError(f"vertex {v} appears in two groups")
            label[v] = gid
    if min(label) < 0:
        raise ValueError("groups do not cover every vertex")
    return label


def contract(g: MultiGraph, groups: Sequence[Iterable[int]] | Sequence[int]) -> Quotient:
    """Contract each group to one vertex, summing parallel edges and dropping loops.

    ``groups`` is either a partition of V (group ids follow its order) or a
    label list ``vertex -> group id`` with ids ``0..k-1``.
    """
    groups = list(groups)
    if groups and isinstance(groups[0], (int, np.integer)):
        label = [int(x) for x in groups]
        if len(label) != g.n:
            raise ValueError("label list must have one entry per vertex")
        k = max(label) + 1
        members: list[set[int]] = [set() for _ in range(k)]
        for v, gid in enumerate(label):
            members[gid].add(v)
        if any(not grp for grp in members):
            raise ValueError("group ids must be contiguous")
    else:
        label = _labels_from_groups(g.n, groups)
        members = [set(grp) for grp in groups]
        if any(not grp for grp in members):
            raise ValueError("empty group")
    pairs: dict[tuple[int, int], list[int]] = {}
    for idx, (u, v, _) in enumerate(g.edges):
        a, b = label[u], label[v]
        if a != b:
            pairs.setdefault((min(a, b), max(a, b)), []).append(idx)
    keys = sorted(pairs)
    qedges = [(a, b, sum(g.edges[i][2] for i in pairs[(a, b)])) for a, b in keys]
    return Quotient(
        graph=MultiGraph(len(members), qedges),
        mapping=tuple(label),
        groups=tuple(frozenset(grp) for grp in members),
        edge_origin=tuple(tuple(pairs[k]) for k in keys),
    )


def partition_by_signature(n: int, cuts: Iterable[Iterable[int]]) -> list[frozenset]:
    """Classes of vertices that no set in ``cuts`` separates, ordered by least member."""
    cuts = [frozenset(c.inside if isinstance(c, VertexCut) else c) for c in cuts]
    classes: dict[tuple, list[int]] = {}
    for v in range(n):
        classes.setdefault(tuple(v in c for c in cuts), []).append(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def quotient_by_cut_family(g: MultiGraph, cuts: Iterable[Iterable[int] | VertexCut]) -> Quotient:
    """Quotient of ``g`` in which two vertices merge iff no cut of the family separates them.

    An empty family gives the one-vertex quotient with ``degenerate`` set.
    """
    cuts = list(cuts)
    q = contract(g, partition_by_signature(g.n, cuts))
    if not cuts:
        return Quotient(q.graph, q.mapping, q.groups, q.edge_origin, degenerate=True)
    return q


def load_graph(text: str | bytes) -> SteinerContext:
    """Parse the graph text format; raises :class:`GraphFormatError`."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"not UTF-8: {exc}") from None
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in s.split()]))
        except ValueError:
            raise GraphFormatError(f"expected integers, got {s!r}", lineno) from None
    if not rows:
        raise GraphFormatError("empty input")
    lineno, header = rows[0]
    if len(header) != 3:
        raise GraphFormatError("header must be 'n m k'", lineno)
    n, m, k = header
    if n < 1 or m < 0 or k < 0:
        raise GraphFormatError("header values must be nonnegative and n >= 1", lineno)
    if len(rows) != m + 2:
        last = rows[-1][0]
        raise GraphFormatError(f"expected {m} edge lines and one Steiner line, found {len(rows) - 1} lines", last)
    merged: dict[tuple[int, int], int] = {}
    for lineno, vals in rows[1 : m + 1]:
        if len(vals) != 3:
            raise GraphFormatError("edge line must be 'u v w'", lineno)
        u, v, w = vals
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError("vertex id out of range", lineno)
        if u == v:
            raise GraphFormatError("self-loops are not allowed", lineno)
        if w < 1:
            raise GraphFormatError("multiplicity must be >= 1", lineno)
        key = (min(u, v) - 1, max(u, v) - 1)
        merged[key] = merged.get(key, 0) + w  # repeated pairs add up
    edges = [(u, v, w) for (u, v), w in merged.items()]
    lineno, ids = rows[-1]
    if len(ids) != k:
        raise GraphFormatError(f"expected {k} Steiner ids, got {len(ids)}", lineno)
    if any(not 1 <= s <= n for s in ids):
        raise GraphFormatError("vertex id out of range", lineno)
    if len(set(ids)) != len(ids):
        raise GraphFormatError("duplicate Steiner id", lineno)
    if k < 2:
        raise GraphFormatError("|S| < 2", lineno)
    g = MultiGraph(n, edges)
    if not g.is_connected():
        raise GraphFormatError("disconnected graph")
    return SteinerContext(g, frozenset(s - 1 for s in ids))


def read_graph_file(path) -> SteinerContext:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None
    return load_graph(data)


def dump_graph(ctx: SteinerContext) -> str:
    """Inverse of :func:`load_graph` (1-based ids)."""
    g = ctx.graph
    lines = [f"{g.n} {len(g.edges)} {len(ctx.steiner)}"]
    lines += [f"{u + 1} {v + 1} {w}" for u, v, w in g.edges]
    lines.append(" ".join(str(s + 1) for s in ctx.steiner_sorted))
    return "\n".join(lines) + "\n"
