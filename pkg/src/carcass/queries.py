"""Queries answered from the unit map, the skeleton and the projection alone (no max flow)."""
from __future__ import annotations

from dataclasses import dataclass

from .carcass import STRETCHED, Carcass
from .errors import DomainError, InvariantBreach
from .graphcore import MultiGraph, VertexCut, contract
from .skeleton import CYCLE, TREE, MinimalSkeletonCut, Skeleton, paths_intersect
from .strip import Strip, assemble_strip, reachability_cone


def strip_for_minimal_cut(car: Carcass, cut: MinimalSkeletonCut) -> Strip:
    """Strip of the bunch of ``cut`` with its inside as the source, placed unit by unit."""
    t = car.skeleton.tree
    fl = car.flesh
    src, snk = set(), set()
    middle = []
    for w, members in enumerate(fl.units):
        if fl.unit_kind[w] == STRETCHED:
            if car.distinguishes(cut, w):
                middle.append(members)
                continue
            node = car.pi.path[w][0]
        else:
            node = car.pi.node[w]
        (src if t.node_inside(cut, node) else snk).update(members)
    return assemble_strip(fl.graph, [frozenset(src)] + middle + [frozenset(snk)], 0, len(middle) + 1)


@dataclass
class QuerySubcactus:
    """Quotient of the skeleton keeping only what lies between two nodes."""

    groups: tuple  # group -> frozenset of skeleton nodes
    group_of: dict  # skeleton node -> group
    anchors: tuple  # (group of nu1, group of nu2)
    edges: tuple  # (group, group, kind, skeleton edge)
    cycles: tuple  # per kept cycle: (cycle id, groups in cycle order, entry position, exit position, ring edge ids)
    steiner: tuple  # group -> Steiner content

    def minimal_cuts(self) -> list[frozenset]:
        """Steiner sides (anchor-1 side) of the minimal cuts separating the two anchors."""
        adj: dict[int, list] = {}
        for a, b, kind, e in self.edges:
            adj.setdefault(a, []).append((b, e))
            adj.setdefault(b, []).append((a, e))

        def side(removed):
            seen = {self.anchors[0]}
            stack = [self.anchors[0]]
            while stack:
                x = stack.pop()
                for y, e in adj.get(x, ()):
                    if e not in removed and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if self.anchors[1] in seen:
                return None
            return frozenset().union(*(self.steiner[x] for x in seen))

        out = []
        for a, b, kind, e in self.edges:
            if kind == TREE:
                out.append(side({e}))
        for _, ring, ring_edges in ((c[0], c[1], c[4]) for c in self.cycles):
            k = len(ring)
            for i in range(k):
                for j in range(i + 2, k):
                    if i == 0 and j == k - 1:
                        continue
                    s = side({ring_edges[i], ring_edges[j]})
                    if s is not None:
                        out.append(s)
        return out


def build_H_st(sk: Skeleton, s: int, t: int) -> QuerySubcactus:
    nu1, nu2 = sk.phi[s], sk.phi[t]
    if nu1 == nu2:
        raise DomainError("not separated")
    tr = sk.tree
    verts = tr.vertex_path(tr.f[nu1], tr.f[nu2])
    base = len(sk.nodes)
    route_edges = set()
    kept = []
    for idx, v in enumerate(verts):
        if idx + 1 < len(verts):
            route_edges.add(tr._between(v, verts[idx + 1]))
        if v >= base:
            c = v - base
            route_edges.update(sk.cycle_edges[c])
            entry = tr._cycle_end(tr._between(verts[idx - 1], v), c)
            exit_ = tr._cycle_end(tr._between(v, verts[idx + 1]), c)
            kept.append((c, sk.cycles[c].index(entry), sk.cycles[c].index(exit_)))
    group_of = {}
    groups = []
    for x in [nu1, nu2] + list(range(len(sk.nodes))):
        if x in group_of:
            continue
        comp = sk.subcactus(x, route_edges)
        for y in comp:
            group_of[y] = len(groups)
        groups.append(comp)
    edges = tuple(
        (group_of[sk.edges[e].u], group_of[sk.edges[e].v], sk.edges[e].kind, e) for e in sorted(route_edges)
    )
    cycles = tuple(
        (c, tuple(group_of[x] for x in sk.cycles[c]), pe, px, sk.cycle_edges[c]) for c, pe, px in kept
    )
    steiner = tuple(sk.content(g) for g in groups)
    return QuerySubcactus(tuple(groups), group_of, (group_of[nu1], group_of[nu2]), edges, cycles, steiner)


def build_Dst(car: Carcass, s: int, t: int) -> Strip:
    """Strip of all S-mincuts separating Steiner vertices ``s`` (source side) and ``t``."""
    sk = car.skeleton
    hst = build_H_st(sk, s, t)
    route = (sk.phi[s], sk.phi[t])
    fl = car.flesh
    members: dict[int, set] = {}
    own = []
    for w, verts in enumerate(fl.units):
        if fl.unit_kind[w] == STRETCHED:
            a, b = car.pi.path[w]
            if paths_intersect(sk, route, (a, b)):
                own.append(verts)
                continue
            grp = hst.group_of[a]
            if hst.group_of[b] != grp:
                raise InvariantBreach(f"projection of unit {w} leaves its group without meeting the route")
        else:
            grp = hst.group_of[car.pi.node[w]]
        members.setdefault(grp, set()).update(verts)
    g1, g2 = hst.anchors
    middle = [frozenset(members[g]) for g in sorted(members) if g not in (g1, g2)] + own
    middle.sort(key=min)
    blocks = [frozenset(members[g1])] + middle + [frozenset(members[g2])]
    return assemble_strip(fl.graph, blocks, 0, len(blocks) - 1)


def _canonical(inside: frozenset, n: int) -> list[int]:
    side = inside if 0 in inside else frozenset(range(n)) - inside
    return sorted(side)


def report_separating_mincut(car: Carcass, x: int, y: int) -> VertexCut | None:
    """An S-mincut separating units ``x`` and ``y``; ``None`` when ``x == y``."""
    if x == y:
        return None
    fl = car.flesh
    sk = car.skeleton
    n = fl.graph.n
    if fl.unit_kind[x] != STRETCHED and fl.unit_kind[y] == STRETCHED:
        x, y = y, x
    candidates = []
    if fl.unit_kind[x] == STRETCHED:
        a, b = car.pi.path[x]
        first = sk.tree.proper_path_edges(a, b)[0]
        st = strip_for_minimal_cut(car, sk.tree_edge_cut(first))
        bx, by = st.phi[fl.rep(x)], st.phi[fl.rep(y)]
        if by == st.source_id:
            candidates.append(st.blocks[st.source_id])
        elif by == st.sink_id:
            candidates.append(frozenset(range(n)) - st.blocks[st.sink_id])
        else:
            rx = reachability_cone(st, bx, "source")
            ry = reachability_cone(st, by, "source")
            if by not in rx:
                candidates.append(st.cut_of(rx))
            if bx not in ry:
                candidates.append(st.cut_of(ry))
    else:
        px, py = car.pi.node[x], car.pi.node[y]
        if px == py:
            raise InvariantBreach(f"distinct terminal units {x}, {y} share skeleton node {px}")
        tr = sk.tree
        if tr.f[px] == tr.f[py]:
            raise InvariantBreach("terminal units projected onto one cycle")
        st = strip_for_minimal_cut(car, sk.tree_edge_cut(tr.step_edge(tr.f[px], tr.f[py])))
        candidates.append(st.blocks[st.source_id])
    if not candidates:
        raise InvariantBreach(f"no separating cut found for units {x}, {y}")
    best = min(_canonical(c, n) for c in candidates)
    return VertexCut(frozenset(best), n)


def report_edge_separating_mincut(car: Carcass, edge) -> VertexCut | None:
    """``edge`` is a graph edge index or a vertex pair ``(u, v)``."""
    g = car.flesh.graph
    if isinstance(edge, int):
        u, v, _ = g.edges[edge]
    else:
        u, v = edge
        if not any({a, b} == {u, v} for a, b, _ in g.edges):
            raise DomainError(f"({u + 1},{v + 1}) is not an edge")
    return report_separating_mincut(car, car.flesh.phi[u], car.flesh.phi[v])


@dataclass
class RingGraph:
    quotient: MultiGraph
    blocks: tuple  # ring vertex -> graph vertices
    size: int  # vertices 0..size-1 stand for the cycle nodes in order
    unit: dict  # ring vertex >= size -> stretched unit
    cycle_edge: dict  # ring vertex >= size -> position of the cycle edge its unit projects to


def ring_view(car: Carcass, cycle: int) -> RingGraph:
    sk = car.skeleton
    if not 0 <= cycle < len(sk.cycles):
        raise DomainError("no such cycle")
    ring = sk.cycles[cycle]
    size = len(ring)
    tr = sk.tree
    fl = car.flesh
    where = {}
    for i, nd in enumerate(ring):
        for x in sk.hanging(nd):
            where[x] = i
    blocks = [set() for _ in ring]
    extra, unit, pos = [], {}, {}
    for w, verts in enumerate(fl.units):
        if fl.unit_kind[w] == STRETCHED:
            a, b = car.pi.path[w]
            k = tr.cycle_edge_used(cycle, a, b)
            if k is not None:
                unit[size + len(extra)] = w
                pos[size + len(extra)] = k
                extra.append(verts)
                continue
            if where[a] != where[b]:
                raise InvariantBreach(f"unit {w} spans two ring positions without a cycle edge")
            blocks[where[a]].update(verts)
        else:
            blocks[where[car.pi.node[w]]].update(verts)
    allb = tuple(frozenset(b) for b in blocks) + tuple(extra)
    q = contract(fl.graph, allb)
    rg = RingGraph(q.graph, allb, size, unit, pos)
    _check_ring(rg)
    return rg


def _check_ring(rg: RingGraph):
    L = rg.size
    for a, b, _ in rg.quotient.edges:
        if a < L and b < L:
            d = abs(a - b)
            if min(d, L - d) > 1:
                raise InvariantBreach(f"ring edge between cycle positions {a} and {b}")
        elif a >= L and b >= L:
            if rg.cycle_edge[a] != rg.cycle_edge[b]:
                raise InvariantBreach(f"adjacent units {rg.unit[a]}, {rg.unit[b]} sit on different cycle edges")
        else:
            i, u = (a, b) if a < L else (b, a)
            if rg.cycle_edge[u] not in ((i - 1) % L, i):
                raise InvariantBreach(f"unit {rg.unit[u]} touches position {i} away from its cycle edge")
