"""Graphviz DOT text for strips, skeletons and the flesh, plus cut serialization.

All ids are shifted by ``base`` (1 for user-facing output). Output is plain
text; nothing here calls graphviz.
"""

from __future__ import annotations

from .skeleton import CYCLE


def _verts(vs, base):
    return " ".join(str(v + base) for v in sorted(vs))


def serialize_cut(cut, capacity: int, base: int = 1) -> str:
    return f"cut inside: {_verts(cut.inside, base)} capacity: {capacity}"


def strip_dot(strip, base: int = 1, name: str = "strip") -> str:
    """Terminals are double circles; in-edges of a non-terminal enter on the
    west port and out-edges leave on the east port, which draws the inherent
    partition."""
    out = [f"digraph {name} {{", "  rankdir=LR;"]
    for b, blk in enumerate(strip.blocks):
        shape = "doublecircle" if b in (strip.source_id, strip.sink_id) else "circle"
        out.append(f'  b{b} [shape={shape}, label="{_verts(blk, base)}"];')
    for i, (t, h) in enumerate(strip.orientation):
        w = strip.quotient.edges[i][2]
        label = f' label="x{w}"' if w > 1 else ""
        out.append(f"  b{t}:e -> b{h}:w [{label.strip()}];" if label else f"  b{t}:e -> b{h}:w;")
    out.append("}")
    return "\n".join(out) + "\n"


def skeleton_dot(sk, base: int = 1) -> str:
    out = ["graph skeleton {"]
    for nd in sk.nodes:
        if nd.steiner:
            out.append(f'  n{nd.id} [label="{_verts(nd.steiner, base)}"];')
        else:
            out.append(f'  n{nd.id} [label="", shape=point, width=0.12];')
    for e in sk.edges:
        style = " [style=dashed]" if e.kind == CYCLE else ""
        out.append(f"  n{e.u} -- n{e.v}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


_KIND_STYLE = {
    "steiner": "shape=box, style=bold",
    "terminal": "shape=ellipse",
    "stretched": "shape=ellipse, style=dashed",
}


def flesh_dot(flesh, base: int = 1) -> str:
    out = ["graph flesh {"]
    for u, blk in enumerate(flesh.units):
        kind = flesh.unit_kind[u] if flesh.unit_kind else "terminal"
        out.append(f'  u{u} [label="{u + base}: {_verts(blk, base)}", {_KIND_STYLE[kind]}];')
    for a, b, w in flesh.quotient.edges:
        label = f' [label="x{w}"]' if w > 1 else ""
        out.append(f"  u{a} -- u{b}{label};")
    out.append("}")
    return "\n".join(out) + "\n"


def strip_text(strip, base: int = 1) -> str:
    """Stable line format: terminals, non-terminal blocks, then arcs between block ids."""
    ids = {b: i + base for i, b in enumerate(range(len(strip.blocks)))}
    out = [
        f"source={ids[strip.source_id]} vertices: {_verts(strip.blocks[strip.source_id], base)}",
        f"sink={ids[strip.sink_id]} vertices: {_verts(strip.blocks[strip.sink_id], base)}",
    ]
    for b in strip.nonterminals:
        out.append(f"block={ids[b]} vertices: {_verts(strip.blocks[b], base)}")
    for i, (t, h) in enumerate(strip.orientation):
        out.append(f"arc {ids[t]} -> {ids[h]} multiplicity={strip.quotient.edges[i][2]}")
    return "\n".join(out) + "\n"
