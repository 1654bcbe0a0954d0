"""The skeleton: a cactus whose minimal cuts are exactly the valid cuts of S.

Construction: a tree from the laminar valid cuts, then one cycle implanted at
every empty node that carries crossing cuts. A companion rooted tree, where
each cycle collapses to one vertex, answers path questions through LCA.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .errors import InvariantBreach
from .validcuts import ValidCutSet

TREE = "tree"
CYCLE = "cycle"


class NoConsistentCycle(InvariantBreach):
    pass


# ---------------------------------------------------------------- laminar tree


@dataclass
class LaminarTree:
    own: list  # node -> Steiner vertices stored at the node
    region: list  # node -> Steiner vertices in its subtree (root: all of S)
    parent: list  # node -> parent node (None at the root)
    crossing: dict  # node -> crossing cuts assigned to it (sides avoiding the root element)

    def children(self, v: int) -> list[int]:
        return [c for c, p in enumerate(self.parent) if p == v]

    def neighbours(self, v: int) -> list[int]:
        out = self.children(v)
        if self.parent[v] is not None:
            out.append(self.parent[v])
        return out

    def part_towards(self, v: int, nb: int) -> frozenset:
        """Steiner vertices on ``nb``'s side of the edge ``v``-``nb``."""
        if self.parent[nb] == v:
            return self.region[nb]
        return self.region[0] - self.region[v]


def _bitmask(side, order) -> int:
    return sum(1 << order.index(s) for s in side)


def build_laminar_tree(vcs: ValidCutSet) -> LaminarTree:
    """One tree edge per laminar valid cut; crossing cuts go to the empty node whose region holds them.

    Each cut is handled through its side avoiding the anchor. Cuts are processed by
    ascending side size; a new node adopts every top-level node its side contains.
    """
    steiner = vcs.steiner
    order = sorted(steiner)
    sides = sorted((steiner - c for c in vcs.laminar_cuts()), key=lambda x: (len(x), _bitmask(x, order)))
    region = [steiner]
    parent: list = [None]
    own = [None]
    top: list[int] = []
    for x in sides:
        v = len(region)
        region.append(x)
        parent.append(None)
        kids = [t for t in top if region[t] <= x]
        covered = frozenset().union(*(region[t] for t in kids)) if kids else frozenset()
        for t in kids:
            parent[t] = v
        own.append(x - covered)
        top = [t for t in top if t not in kids] + [v]
    for t in top:
        parent[t] = 0
    own[0] = steiner - frozenset().union(*(region[t] for t in top)) if top else steiner
    tree = LaminarTree(own, region, parent, {})
    for v in range(1, len(region)):
        deg = len(tree.neighbours(v))
        if not own[v] and deg < 3:
            raise InvariantBreach(f"laminar tree node {v} is empty with degree {deg}")

    by_size = sorted(range(len(region)), key=lambda v: (len(region[v]), v))
    for c in vcs.crossing_cuts():
        x = steiner - c
        mu = next(v for v in by_size if x <= region[v])
        kids = tree.children(mu)
        if mu == 0 or own[mu] or any((region[k] & x) and not region[k] <= x for k in kids):
            raise InvariantBreach(f"crossing cut {sorted(c)} does not fit an empty tree node")
        tree.crossing.setdefault(mu, []).append(x)
    return tree


# ----------------------------------------------------------- circular ordering


def _segments_valid(order, parts, vcs: ValidCutSet, required) -> bool:
    k = len(order)
    segs = set()
    for i in range(k):
        acc = frozenset()
        for length in range(1, k):
            acc = acc | parts[order[(i + length - 1) % k]]
            if not vcs.is_valid(acc):
                return False
            segs.add(vcs.key(acc))
    return all(vcs.key(r) in segs for r in required)


def order_circular_family(parts: list[frozenset], vcs: ValidCutSet, required=()) -> list[int]:
    """Cyclic order of ``parts`` in which every contiguous union is a valid cut.

    Neighbours are found from the valid pairwise unions; for four parts, or if that
    graph is not a single cycle, all orders are searched. ``required`` cuts must
    appear as segments.
    """
    k = len(parts)
    if k < 4:
        raise NoConsistentCycle(f"a cycle needs at least 4 parts, got {k}")
    if k != 4:
        adj = [[j for j in range(k) if j != i and vcs.is_valid(parts[i] | parts[j])] for i in range(k)]
        if all(len(a) == 2 for a in adj):
            order = [0, min(adj[0])]
            while len(order) < k:
                a, b = adj[order[-1]]
                nxt = a if a != order[-2] else b
                if nxt in order:
                    break
                order.append(nxt)
            if len(order) == k and _segments_valid(order, parts, vcs, required):
                return order
    if k <= 9:
        for rest in permutations(range(1, k)):
            if rest[0] > rest[-1]:
                continue  # reflections
            order = [0, *rest]
            if _segments_valid(order, parts, vcs, required):
                return order
    raise NoConsistentCycle("no consistent cycle")


# -------------------------------------------------------------------- skeleton


@dataclass(frozen=True)
class SkeletonNode:
    id: int
    steiner: frozenset
    kind: str
    cycle: int | None = None


@dataclass(frozen=True)
class StructuralEdge:
    id: int
    u: int
    v: int
    kind: str
    cycle: int | None = None
    position: int | None = None  # cycle edge k joins cycles[c][k] and cycles[c][k + 1]

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class MinimalSkeletonCut:
    """A tree edge, or two non-adjacent edges of one cycle, with the Steiner side it cuts off.

    For a tree edge ``(u, v)`` the side is ``S(u, e)``; for cycle positions
    ``i < j`` it is the segment ``nu_{i+1} .. nu_j``.
    """

    kind: str
    edges: tuple
    side: frozenset
    cycle: int | None = None
    positions: tuple | None = None


class Skeleton:
    def __init__(self, nodes, edges, cycles, cycle_edges, steiner):
        self.nodes: tuple[SkeletonNode, ...] = tuple(nodes)
        self.edges: tuple[StructuralEdge, ...] = tuple(edges)
        self.cycles: tuple = tuple(tuple(c) for c in cycles)
        self.cycle_edges: tuple = tuple(tuple(c) for c in cycle_edges)
        self.steiner = frozenset(steiner)
        self.phi = {s: nd.id for nd in self.nodes for s in nd.steiner}
        adj: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self._hanging: dict[int, frozenset] = {}
        self._tree = None
        self._cuts = None

    # basic facts
    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def tree_edges(self) -> list[StructuralEdge]:
        return [e for e in self.edges if e.kind == TREE]

    def tree_edge_of(self, cycle_node: int) -> StructuralEdge:
        return next(self.edges[i] for _, i in self.adjacency[cycle_node] if self.edges[i].kind == TREE)

    def position(self, c: int, node: int) -> int:
        return self.cycles[c].index(node)

    # subcacti
    def subcactus(self, start: int, removed) -> frozenset:
        removed = set(removed)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y, i in self.adjacency[x]:
                if i not in removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def content(self, nodes) -> frozenset:
        return frozenset().union(*(self.nodes[x].steiner for x in nodes)) if nodes else frozenset()

    def hanging(self, cycle_node: int) -> frozenset:
        """Nodes of the subcactus hanging off a cycle node (the node included)."""
        if cycle_node not in self._hanging:
            nd = self.nodes[cycle_node]
            self._hanging[cycle_node] = self.subcactus(cycle_node, self.cycle_edges[nd.cycle])
        return self._hanging[cycle_node]

    def minimal_cuts(self, include_adjacent: bool = False) -> list[MinimalSkeletonCut]:
        """Tree edges, then non-adjacent cycle-edge pairs (adjacent pairs too if asked)."""
        out = []
        for e in self.tree_edges:
            out.append(MinimalSkeletonCut(TREE, (e.id,), side_of_tree_edge(self, e.u, e.id)))
        for c, ring in enumerate(self.cycles):
            k = len(ring)
            for i in range(k):
                for j in range(i + 1, k):
                    adjacent = j == i + 1 or (i == 0 and j == k - 1)
                    if adjacent and not include_adjacent:
                        continue
                    side = side_of_cycle_segment(self, c, ring[(i + 1) % k], ring[j])
                    out.append(MinimalSkeletonCut(CYCLE, (self.cycle_edges[c][i], self.cycle_edges[c][j]), side, c, (i, j)))
        return out

    @property
    def cuts(self) -> tuple:
        """Cached :meth:`minimal_cuts`; the index of a cut here is its public cut id."""
        if self._cuts is None:
            self._cuts = tuple(self.minimal_cuts())
        return self._cuts

    def tree_edge_cut(self, e: int) -> MinimalSkeletonCut:
        return next(c for c in self.cuts if c.kind == TREE and c.edges[0] == e)

    def cut_nodes(self, cut: MinimalSkeletonCut) -> frozenset:
        """Skeleton nodes on the inside of a minimal cut."""
        if cut.kind == TREE:
            e = self.edges[cut.edges[0]]
            return self.subcactus(e.u, cut.edges)
        i, j = cut.positions
        return self.subcactus(self.cycles[cut.cycle][(i + 1) % len(self.cycles[cut.cycle])], cut.edges)

    @property
    def tree(self) -> "SkeletonTree":
        if self._tree is None:
            self._tree = SkeletonTree(self)
        return self._tree


def side_of_tree_edge(sk: Skeleton, nu: int, e: int) -> frozenset:
    edge = sk.edges[e]
    if edge.kind != TREE:
        raise ValueError(f"edge {e} is not a tree edge")
    if nu not in (edge.u, edge.v):
        raise ValueError(f"edge {e} is not incident on node {nu}")
    return sk.content(sk.subcactus(nu, (e,)))


def side_of_cycle_segment(sk: Skeleton, c: int, p_node: int, q_node: int) -> frozenset:
    """Union of the hanging contents of the cycle nodes from ``p`` to ``q`` cyclically."""
    if not 0 <= c < len(sk.cycles):
        raise ValueError("no such cycle")
    ring = sk.cycles[c]
    if p_node not in ring or q_node not in ring:
        raise ValueError("nodes not on the cycle")
    p, q = ring.index(p_node), ring.index(q_node)
    out = frozenset()
    i = p
    while True:
        out |= sk.content(sk.hanging(ring[i]))
        if i == q:
            return out
        i = (i + 1) % len(ring)


def implant_cycles(tree: LaminarTree, orderings: dict) -> Skeleton:
    """Replace each node ``mu`` in ``orderings`` by a cycle through the midpoints of its edges.

    ``orderings[mu]`` lists ``mu``'s laminar-tree neighbours in cycle order.
    """
    kept = [v for v in range(len(tree.own)) if v not in orderings]
    node_id = {v: i for i, v in enumerate(kept)}
    nodes = [SkeletonNode(node_id[v], tree.own[v], TREE) for v in kept]
    rep = {}
    cycles = []
    for c, mu in enumerate(sorted(orderings)):
        ring = []
        for nb in orderings[mu]:
            nid = len(nodes)
            nodes.append(SkeletonNode(nid, frozenset(), CYCLE, c))
            rep[(mu, nb)] = nid
            ring.append(nid)
        cycles.append(ring)
    edges = []
    for v in range(1, len(tree.own)):
        p = tree.parent[v]
        a = rep[(v, p)] if v in orderings else node_id[v]
        b = rep[(p, v)] if p in orderings else node_id[p]
        edges.append(StructuralEdge(len(edges), a, b, TREE))
    cycle_edges = []
    for c, ring in enumerate(cycles):
        ids = []
        for k in range(len(ring)):
            ids.append(len(edges))
            edges.append(StructuralEdge(len(edges), ring[k], ring[(k + 1) % len(ring)], CYCLE, c, k))
        cycle_edges.append(ids)
    return Skeleton(nodes, edges, cycles, cycle_edges, tree.region[0])


def build_skeleton(vcs: ValidCutSet) -> Skeleton:
    tree = build_laminar_tree(vcs)
    orderings = {}
    for mu, required in sorted(tree.crossing.items()):
        nbs = tree.neighbours(mu)
        parts = [tree.part_towards(mu, nb) for nb in nbs]
        order = order_circular_family(parts, vcs, required)
        orderings[mu] = [nbs[i] for i in order]
    return implant_cycles(tree, orderings)


# -------------------------------------------------------- compressed rooted tree


class NotProperPath(ValueError):
    pass


class SkeletonTree:
    """Rooted tree with every cycle collapsed to one vertex, plus an LCA index.

    Tree nodes keep their skeleton id; cycle ``c`` becomes vertex ``N + c`` where
    ``N`` is the number of skeleton nodes. Tree edges of the skeleton are exactly
    the edges of this tree.
    """

    def __init__(self, sk: Skeleton):
        self.sk = sk
        base = len(sk.nodes)
        self.f = [base + nd.cycle if nd.kind == CYCLE else nd.id for nd in sk.nodes]
        size = base + len(sk.cycles)
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(size)]
        for e in sk.tree_edges:
            a, b = self.f[e.u], self.f[e.v]
            nbrs[a].append((b, e.id))
            nbrs[b].append((a, e.id))
        leaves = [nd.id for nd in sk.nodes if nd.kind == TREE and len(nbrs[nd.id]) <= 1]
        self.root = leaves[0]
        self.parent = [-1] * size
        self.parent_edge = [-1] * size  # skeleton tree edge to the parent
        self.depth = [0] * size
        self.children: list[list[int]] = [[] for _ in range(size)]
        self.tin = [0] * size
        self.tout = [0] * size
        self.euler: list[int] = []
        self.first = [0] * size
        self.edge_child = {}  # skeleton tree edge -> child endpoint in this tree

        # iterative DFS with ordered children
        stack = [(self.root, iter(self._ordered(self.root, nbrs)))]
        self._enter(self.root)
        clock = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                self.tout[v] = clock
                clock += 1
                if stack:
                    self.euler.append(stack[-1][0])
                continue
            w, e = nxt
            self.parent[w], self.parent_edge[w], self.depth[w] = v, e, self.depth[v] + 1
            self.children[v].append(w)
            self.edge_child[e] = w
            self.tin[w] = clock
            clock += 1
            self._enter(w)
            stack.append((w, iter(self._ordered(w, nbrs))))
        self.tin[self.root] = 0
        self._build_sparse()
        self.child_tin = [[self.tin[c] for c in ch] for ch in self.children]

    def _enter(self, v):
        self.first[v] = len(self.euler)
        self.euler.append(v)

    def _ordered(self, v, nbrs):
        """Children of ``v``; around a collapsed cycle they follow the cycle order."""
        cand = [(w, e) for w, e in nbrs[v] if e != self.parent_edge[v]]
        base = len(self.sk.nodes)
        if v < base:
            return sorted(cand)
        c = v - base
        ring = self.sk.cycles[c]
        pos = {}
        for w, e in cand:
            pos[e] = ring.index(self._cycle_end(e, c))
        start = 0
        if self.parent_edge[v] >= 0:
            start = ring.index(self._cycle_end(self.parent_edge[v], c))
        k = len(ring)
        return sorted(cand, key=lambda we: (pos[we[1]] - start) % k)

    def _cycle_end(self, e: int, c: int) -> int:
        edge = self.sk.edges[e]
        for x in (edge.u, edge.v):
            nd = self.sk.nodes[x]
            if nd.kind == CYCLE and nd.cycle == c:
                return x
        raise ValueError(f"tree edge {e} does not touch cycle {c}")

    def _build_sparse(self):
        seq = self.euler
        self._sparse = [list(seq)]
        j = 1
        while (1 << j) <= len(seq):
            prev = self._sparse[-1]
            half = 1 << (j - 1)
            row = []
            for i in range(len(seq) - (1 << j) + 1):
                a, b = prev[i], prev[i + half]
                row.append(a if self.depth[a] <= self.depth[b] else b)
            self._sparse.append(row)
            j += 1

    # LCA and friends
    def lca(self, a: int, b: int) -> int:
        i, j = sorted((self.first[a], self.first[b]))
        k = (j - i + 1).bit_length() - 1
        x, y = self._sparse[k][i], self._sparse[k][j - (1 << k) + 1]
        return x if self.depth[x] <= self.depth[y] else y

    def dist(self, a: int, b: int) -> int:
        return self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)]

    def is_ancestor(self, a: int, b: int) -> bool:
        return self.tin[a] <= self.tin[b] and self.tout[b] <= self.tout[a]

    def on_path(self, x: int, a: int, b: int) -> bool:
        return self.dist(a, x) + self.dist(x, b) == self.dist(a, b)

    def first_step(self, a: int, b: int) -> int:
        """Neighbour of ``a`` on the way to ``b``."""
        if a == b:
            raise ValueError("no step from a vertex to itself")
        if not self.is_ancestor(a, b):
            return self.parent[a]
        from bisect import bisect_right

        ch = self.children[a]
        return ch[bisect_right(self.child_tin[a], self.tin[b]) - 1]

    def step_edge(self, a: int, b: int) -> int:
        """Skeleton tree edge leaving ``a`` towards ``b``."""
        s = self.first_step(a, b)
        return self.parent_edge[a] if s == self.parent[a] else self.parent_edge[s]

    def cycle_vertex(self, c: int) -> int:
        return len(self.sk.nodes) + c

    # positions on cycles
    def cycle_position(self, c: int, node: int) -> int:
        """Index on cycle ``c`` of the cycle node through which ``node`` attaches."""
        nd = self.sk.nodes[node]
        if nd.kind == CYCLE and nd.cycle == c:
            return self.sk.cycles[c].index(node)
        e = self.step_edge(self.cycle_vertex(c), self.f[node])
        return self.sk.cycles[c].index(self._cycle_end(e, c))

    def passes_cycle(self, c: int, a: int, b: int) -> bool:
        v = self.cycle_vertex(c)
        if not self.on_path(v, self.f[a], self.f[b]):
            return False
        return self.cycle_position(c, a) != self.cycle_position(c, b)

    def cycle_edge_used(self, c: int, a: int, b: int) -> int | None:
        """Position of the one edge of cycle ``c`` on the proper path ``a``-``b``, if any."""
        if not self.passes_cycle(c, a, b):
            return None
        pa, pb = self.cycle_position(c, a), self.cycle_position(c, b)
        k = len(self.sk.cycles[c])
        if pb == (pa + 1) % k:
            return pa
        if pa == (pb + 1) % k:
            return pb
        raise NotProperPath(f"path {a}-{b} uses more than one edge of cycle {c}")

    def edge_on_proper_path(self, e: int, a: int, b: int) -> bool:
        edge = self.sk.edges[e]
        if edge.kind == TREE:
            child = self.edge_child[e]
            return self.is_ancestor(child, self.f[a]) != self.is_ancestor(child, self.f[b])
        return self.cycle_edge_used(edge.cycle, a, b) == edge.position

    def node_inside(self, cut: MinimalSkeletonCut, x: int) -> bool:
        """Is skeleton node ``x`` on the inside of ``cut``?"""
        if cut.kind == TREE:
            e = self.sk.edges[cut.edges[0]]
            child = self.edge_child[e.id]
            return self.is_ancestor(child, self.f[x]) == self.is_ancestor(child, self.f[e.u])
        i, j = cut.positions
        return i < self.cycle_position(cut.cycle, x) <= j

    def cut_meets_proper_path(self, cut: MinimalSkeletonCut, a: int, b: int) -> bool:
        return any(self.edge_on_proper_path(e, a, b) for e in cut.edges)

    # whole paths
    def vertex_path(self, a: int, b: int) -> list[int]:
        """Tree vertices from ``a`` to ``b``."""
        top = self.lca(a, b)
        left, right = [], []
        while a != top:
            left.append(a)
            a = self.parent[a]
        while b != top:
            right.append(b)
            b = self.parent[b]
        return left + [top] + right[::-1]

    def proper_path_edges(self, a: int, b: int) -> list[int] | None:
        """Structural edges of the proper path from ``a`` to ``b``, or None if none exists."""
        verts = self.vertex_path(self.f[a], self.f[b])
        base = len(self.sk.nodes)
        out = []
        for idx, v in enumerate(verts):
            if v >= base:
                c = v - base
                ring = self.sk.cycles[c]
                entry = a if idx == 0 else self._cycle_end(self._between(verts[idx - 1], v), c)
                exit_ = b if idx == len(verts) - 1 else self._cycle_end(self._between(v, verts[idx + 1]), c)
                pa, pb = ring.index(entry), ring.index(exit_)
                k = len(ring)
                if pa != pb:
                    if pb == (pa + 1) % k:
                        out.append(self.sk.cycle_edges[c][pa])
                    elif pa == (pb + 1) % k:
                        out.append(self.sk.cycle_edges[c][pb])
                    else:
                        return None
            if idx + 1 < len(verts):
                out.append(self._between(v, verts[idx + 1]))
        return out

    def _between(self, x: int, y: int) -> int:
        return self.parent_edge[y] if self.parent[y] == x else self.parent_edge[x]


def paths_intersect(sk: Skeleton, p1: tuple[int, int], p2: tuple[int, int]) -> bool:
    """Do two skeleton paths share a tree edge, or edges of a common cycle?"""
    t = sk.tree
    a, b = t.f[p1[0]], t.f[p1[1]]
    c, d = t.f[p2[0]], t.f[p2[1]]
    cand = sorted((t.lca(a, c), t.lca(a, d), t.lca(b, c), t.lca(b, d)), key=lambda x: -t.depth[x])
    p, q = cand[0], cand[1]
    if not (t.on_path(p, a, b) and t.on_path(p, c, d)):
        return False
    if t.dist(p, q) > 0:
        return True
    base = len(sk.nodes)
    if p < base:
        return False
    cyc = p - base
    return t.passes_cycle(cyc, *p1) and t.passes_cycle(cyc, *p2)
