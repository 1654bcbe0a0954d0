"""The flesh (units of V no S-mincut splits) and its projection onto the skeleton."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, InvariantBreach
from .graphcore import MultiGraph, SteinerContext, contract, partition_by_signature
from .maxflow import FlowResult, flow_calls, steiner_lambda
from .skeleton import CYCLE, TREE, MinimalSkeletonCut, Skeleton, build_skeleton, side_of_tree_edge
from .strip import Strip, build_strip
from .validcuts import DEFAULT_ENUM_BOUND, ValidCutSet, enumerate_valid_cuts

STEINER = "steiner"
TERMINAL = "terminal"
STRETCHED = "stretched"


@dataclass
class Flesh:
    graph: MultiGraph
    quotient: MultiGraph  # one vertex per unit
    phi: tuple  # vertex -> unit
    units: tuple  # unit -> frozenset of vertices
    edge_origin: tuple  # flesh edge -> graph edge indices
    steiner: frozenset
    unit_kind: list = field(default_factory=list)
    inherent_partition: dict = field(default_factory=dict)  # stretched unit -> (side, side)

    def incident_edges(self, unit: int) -> frozenset:
        """E(unit): graph edges with exactly one endpoint in the unit."""
        return frozenset(
            i for i, (u, v, _) in enumerate(self.graph.edges) if (self.phi[u] == unit) != (self.phi[v] == unit)
        )

    def edges_between(self, x: int, y: int) -> list[int]:
        return [i for i, (u, v, _) in enumerate(self.graph.edges) if {self.phi[u], self.phi[v]} == {x, y}]

    def rep(self, unit: int) -> int:
        return min(self.units[unit])

    def is_steiner_unit(self, unit: int) -> bool:
        return bool(self.units[unit] & self.steiner)


def build_flesh(ctx: SteinerContext, flows: dict[int, FlowResult] | None = None) -> Flesh:
    """Refine V by the strips D(x, y) for the anchor x and every y at flow distance lambda."""
    if flows is None or ctx.lam is None:
        _, flows = steiner_lambda(ctx)
    g = ctx.graph
    x = ctx.anchor
    cuts = []
    for y, fr in sorted(flows.items()):
        if fr.value != ctx.lam:
            continue
        st = build_strip(g, {x}, {y}, fr)
        cuts.extend(st.blocks)
    q = contract(g, partition_by_signature(g.n, cuts))
    return Flesh(g, q.graph, q.mapping, q.groups, q.edge_origin, ctx.steiner)


@dataclass
class ProjectionMapping:
    node: dict  # terminal or Steiner unit -> skeleton node
    path: dict  # stretched unit -> (node, node), the proper path endpoints

    def endpoints(self, unit: int) -> tuple[int, int]:
        if unit in self.node:
            return (self.node[unit], self.node[unit])
        return self.path[unit]

    def dump(self, base: int = 0) -> str:
        lines = []
        for u in sorted(set(self.node) | set(self.path)):
            if u in self.node:
                lines.append(f"{u + base} -> {self.node[u] + base}")
            else:
                a, b = self.path[u]
                lines.append(f"{u + base} -> ({a + base},{b + base})")
        return "\n".join(lines) + "\n"


@dataclass
class Carcass:
    ctx: SteinerContext
    valid_cuts: ValidCutSet
    skeleton: Skeleton
    flesh: Flesh
    pi: ProjectionMapping
    tree_strips: dict  # tree edge -> Strip of its bunch (inside = S(u, e) as source)
    build_flow_calls: int = 0

    @property
    def lam(self) -> int:
        return self.ctx.lam

    def unit_of(self, v: int) -> int:
        return self.flesh.phi[v]

    def distinguishes(self, cut: MinimalSkeletonCut, unit: int) -> bool:
        """Constant-time test through the stored projection."""
        if self.flesh.unit_kind[unit] != STRETCHED:
            return False
        a, b = self.pi.path[unit]
        return self.skeleton.tree.cut_meets_proper_path(cut, a, b)


def _tree_distinguishes(strip: Strip, flesh: Flesh, unit: int) -> bool:
    return strip.phi[flesh.rep(unit)] not in (strip.source_id, strip.sink_id)


def classify_units(flesh: Flesh, sk: Skeleton, tree_strips: dict) -> dict:
    """Fill ``unit_kind``; return the distinguishing tree edges of every unit."""
    dist = {}
    kinds = []
    for w in range(len(flesh.units)):
        if flesh.is_steiner_unit(w):
            kinds.append(STEINER)
            dist[w] = frozenset()
            continue
        d = frozenset(e for e, st in tree_strips.items() if _tree_distinguishes(st, flesh, w))
        dist[w] = d
        kinds.append(STRETCHED if d else TERMINAL)
    flesh.unit_kind = kinds
    return dist


def map_terminal_unit(flesh: Flesh, sk: Skeleton, tree_strips: dict, unit: int) -> int:
    """Walk along tree edges pointed towards the unit until no edge leads further."""
    if flesh.unit_kind and flesh.unit_kind[unit] == STRETCHED:
        raise DomainError(f"unit {unit} is not terminal")
    r = flesh.rep(unit)
    toward = {}
    for e, st in tree_strips.items():
        edge = sk.edges[e]
        b = st.phi[r]
        if b == st.source_id:
            toward[e] = edge.u
        elif b == st.sink_id:
            toward[e] = edge.v
        else:
            raise DomainError(f"unit {unit} is not terminal")

    def out_edges(x):
        return [i for _, i in sk.adjacency[x] if sk.edges[i].kind == TREE and toward[i] != x]

    x = sk.tree.root
    for _ in range(len(sk.nodes) + 1):
        out = out_edges(x)
        if not out:
            return x
        if len(out) > 1:
            raise InvariantBreach(f"tree node {x} has {len(out)} edges pointing away for unit {unit}")
        y = sk.edges[out[0]].other(x)
        if sk.nodes[y].kind == CYCLE:
            leaving = [z for z in sk.cycles[sk.nodes[y].cycle] if out_edges(z)]
            if len(leaving) != 1:
                raise InvariantBreach(f"cycle {sk.nodes[y].cycle} has {len(leaving)} exits for unit {unit}")
            y = sk.edges[out_edges(leaving[0])[0]].other(leaving[0])
        x = y
    raise InvariantBreach(f"direction walk for unit {unit} does not terminate")


def projected_edges(sk: Skeleton, tree_edges: frozenset) -> frozenset:
    """Tree edges plus each cycle edge whose two endpoints' tree edges are both present."""
    out = set(tree_edges)
    for c, ids in enumerate(sk.cycle_edges):
        for i in ids:
            e = sk.edges[i]
            if sk.tree_edge_of(e.u).id in tree_edges and sk.tree_edge_of(e.v).id in tree_edges:
                out.add(i)
    return frozenset(out)


def path_endpoints(sk: Skeleton, edge_ids) -> tuple[int, int]:
    """Endpoints of the proper path with exactly this edge set; raises otherwise."""
    edge_ids = frozenset(edge_ids)
    if not edge_ids:
        raise InvariantBreach("empty projection")
    deg: dict[int, int] = {}
    for i in edge_ids:
        e = sk.edges[i]
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    ends = sorted(x for x, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        raise InvariantBreach(f"edges {sorted(edge_ids)} do not form a path")
    a, b = ends
    seq = sk.tree.proper_path_edges(a, b)
    if seq is None or frozenset(seq) != edge_ids or len(seq) != len(edge_ids):
        raise InvariantBreach(f"edges {sorted(edge_ids)} do not form a proper path")
    if sk.edges[seq[0]].kind != TREE or sk.edges[seq[-1]].kind != TREE:
        raise InvariantBreach(f"proper path {a}-{b} does not start and end with tree edges")
    return (a, b)


def project_stretched_unit(flesh: Flesh, sk: Skeleton, tree_dist: frozenset) -> tuple[int, int]:
    return path_endpoints(sk, projected_edges(sk, tree_dist))


def inherent_partition_of(flesh: Flesh, unit: int, strips) -> tuple[frozenset, frozenset]:
    """Inherent partition of a stretched unit; every strip in ``strips`` must agree."""
    found = None
    for st in strips:
        b = st.phi[flesh.rep(unit)]
        if b in (st.source_id, st.sink_id):
            continue
        if st.blocks[b] != flesh.units[unit]:
            raise InvariantBreach(f"unit {unit} is not a distinct strip vertex")
        part = st.inherent_partition[b]
        if found is None:
            found = part
        elif {found[0], found[1]} != {part[0], part[1]}:
            raise InvariantBreach(f"inherent partition of unit {unit} differs across strips")
    if found is None:
        raise DomainError(f"unit {unit} is not stretched")
    if sum(flesh.graph.edges[i][2] for i in found[0]) != sum(flesh.graph.edges[i][2] for i in found[1]):
        raise InvariantBreach(f"inherent partition of unit {unit} is unbalanced")
    return found


def build_carcass(ctx: SteinerContext, bound: int = DEFAULT_ENUM_BOUND) -> Carcass:
    start_calls = flow_calls()
    _, flows = steiner_lambda(ctx)
    vcs = enumerate_valid_cuts(ctx, bound)
    sk = build_skeleton(vcs)
    flesh = build_flesh(ctx, flows)
    g = ctx.graph
    tree_strips = {}
    for e in sk.tree_edges:
        side = side_of_tree_edge(sk, e.u, e.id)
        tree_strips[e.id] = build_strip(g, side, ctx.steiner - side)
    dist = classify_units(flesh, sk, tree_strips)
    node, path = {}, {}
    for w, kind in enumerate(flesh.unit_kind):
        if kind == STEINER:
            owners = {sk.phi[s] for s in flesh.units[w] & ctx.steiner}
            if len(owners) != 1:
                raise InvariantBreach(f"Steiner unit {w} spans several skeleton nodes")
            node[w] = owners.pop()
        elif kind == TERMINAL:
            node[w] = map_terminal_unit(flesh, sk, tree_strips, w)
        else:
            path[w] = project_stretched_unit(flesh, sk, dist[w])
            flesh.inherent_partition[w] = inherent_partition_of(flesh, w, [tree_strips[e] for e in sorted(dist[w])])
    pi = ProjectionMapping(node, path)
    return Carcass(ctx, vcs, sk, flesh, pi, tree_strips, flow_calls() - start_calls)


# ------------------------------------------------------------ edge projections


def _edge_set(sk: Skeleton, a: int, b: int) -> frozenset:
    seq = sk.tree.proper_path_edges(a, b)
    return frozenset(seq or ())


def project_edge(car: Carcass, x: int, y: int) -> tuple[int, int]:
    """Endpoints ``(p, q)`` of the proper path for flesh edge ``(x, y)``: π(x) initial, π(y) final."""
    if x == y:
        raise DomainError("a flesh edge joins two different units")
    if not car.flesh.edges_between(x, y):
        raise DomainError(f"units {x} and {y} are not adjacent")
    sk = car.skeleton
    ex_ends, ey_ends = car.pi.endpoints(x), car.pi.endpoints(y)
    ex, ey = _edge_set(sk, *ex_ends), _edge_set(sk, *ey_ends)
    best = None
    for p in sorted(set(ex_ends)):
        for q in sorted(set(ey_ends)):
            seq = sk.tree.proper_path_edges(p, q)
            if not seq:
                continue
            if frozenset(seq[: len(ex)]) != ex or frozenset(seq[len(seq) - len(ey) :]) != ey:
                continue
            if best is None or len(seq) < best[0]:
                best = (len(seq), (p, q))
    if best is None:
        raise InvariantBreach(f"no proper path joins the projections of units {x} and {y}")
    return best[1]


def project_coherent_path(car: Carcass, units: list[int]) -> tuple[int, int]:
    """Fold edge projections along a coherent path of units."""
    if len(units) < 2:
        raise DomainError("a path needs at least two units")
    fl = car.flesh
    for i in range(1, len(units) - 1):
        w = units[i]
        if fl.unit_kind[w] != STRETCHED:
            raise DomainError("not coherent")
        side_in, side_out = fl.inherent_partition[w]
        a = set(fl.edges_between(units[i - 1], w))
        b = set(fl.edges_between(w, units[i + 1]))
        if not a or not b:
            raise DomainError(f"units {units[i - 1]}, {w}, {units[i + 1]} do not form a path")
        if not ((a <= side_in and b <= side_out) or (a <= side_out and b <= side_in)):
            raise DomainError("not coherent")
    p, q = project_edge(car, units[0], units[1])
    covered = _edge_set(car.skeleton, p, q)
    for i in range(1, len(units) - 1):
        r, s = project_edge(car, units[i], units[i + 1])
        nxt = _edge_set(car.skeleton, r, s)
        seq = car.skeleton.tree.proper_path_edges(p, s)
        if seq is None or not (covered | nxt) <= frozenset(seq):
            raise InvariantBreach("coherent path projection is not a proper path")
        q = s
        covered = frozenset(seq)
    return (p, q)
