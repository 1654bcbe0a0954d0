"""Command-line front end: build, verify, sep, strip, dst, export.

Vertex ids, unit ids, node ids and cut ids are 1-based on the command line and
in all output. Exit codes: 0 ok, 1 domain error, 2 input error, 3 invariant
breach (including failed verification).
"""

from __future__ import annotations

import argparse
import sys

from . import dot
from .carcass import build_carcass
from .errors import CarcassError, DomainError, GraphFormatError, InvariantBreach
from .graphcore import cut_capacity, read_graph_file
from .oracle import MAX_ORACLE_N, check_carcass, enumerate_all, tap
from .queries import build_Dst, report_separating_mincut, strip_for_minimal_cut
from .validcuts import DEFAULT_ENUM_BOUND


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carcass", description="Steiner mincut carcass toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph", help="graph file")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--max-enum", type=int, default=None, help="enumeration bound (|S| for build, n for verify)")
        return sp

    verb("build", "build the carcass and print metrics").add_argument("--summary", action="store_true")
    verb("verify", "check the carcass against the brute-force oracle (TAP output)")
    sp = verb("sep", "report an S-mincut separating two vertices")
    sp.add_argument("x", type=int)
    sp.add_argument("y", type=int)
    sp = verb("strip", "print the strip of a minimal cut")
    sp.add_argument("cut", type=int, help="minimal cut id as listed by build")
    sp = verb("dst", "print the strip of S-mincuts separating two Steiner vertices")
    sp.add_argument("s", type=int)
    sp.add_argument("t", type=int)
    verb("export", "DOT export").add_argument(
        "--what", required=True, help="flesh | skeleton | strip:<cut-id> | dst:<s>,<t>"
    )
    return p


def _vertex(ctx, x: int) -> int:
    if not 1 <= x <= ctx.graph.n:
        raise DomainError(f"vertex {x} out of range")
    return x - 1


def _minimal_cut(car, cid: int):
    cuts = car.skeleton.cuts
    if not 1 <= cid <= len(cuts):
        raise DomainError(f"no minimal cut {cid}")
    return cuts[cid - 1]


def _steiner_pair(car, s: int, t: int):
    s, t = _vertex(car.ctx, s), _vertex(car.ctx, t)
    if s not in car.ctx.steiner or t not in car.ctx.steiner:
        raise DomainError("dst needs two Steiner vertices")
    return s, t


def summary_line(car) -> str:
    sk = car.skeleton
    return f"lambda={car.lam} units={len(car.flesh.units)} skeleton_nodes={len(sk.nodes)} skeleton_edges={len(sk.edges)}"


def build_report(car) -> str:
    sk, fl = car.skeleton, car.flesh
    kinds = fl.unit_kind
    lines = [
        summary_line(car),
        f"cycles={len(sk.cycles)} tree_edges={len(sk.tree_edges)} minimal_cuts={len(sk.cuts)} "
        f"valid_cuts={len(car.valid_cuts.cuts)} flow_calls={car.build_flow_calls}",
        " ".join(f"{k}_units={kinds.count(k)}" for k in ("steiner", "terminal", "stretched")),
    ]
    for u, blk in enumerate(fl.units):
        lines.append(f"unit {u + 1}: {dot._verts(blk, 1)} kind={kinds[u]}")
    for nd in sk.nodes:
        lines.append(f"node {nd.id + 1}: {dot._verts(nd.steiner, 1) or '-'} kind={nd.kind}")
    for i, c in enumerate(sk.cuts, start=1):
        edges = " ".join(str(e + 1) for e in c.edges)
        lines.append(f"cut {i}: kind={c.kind} edges: {edges} side: {dot._verts(c.side, 1)}")
    lines.append("projection:")
    return "\n".join(lines) + "\n" + car.pi.dump(base=1)


def _run(args) -> tuple[int, str]:
    ctx = read_graph_file(args.graph)
    if args.verb == "verify":
        bound = args.max_enum if args.max_enum is not None else MAX_ORACLE_N
        report = enumerate_all(ctx, bound)
        car = build_carcass(ctx)
        verdicts = check_carcass(ctx, car, report)
        return (0 if all(v.ok for v in verdicts) else 3), tap(verdicts)

    bound = args.max_enum if args.max_enum is not None else DEFAULT_ENUM_BOUND
    car = build_carcass(ctx, bound)
    if args.verb == "build":
        return 0, (summary_line(car) + "\n") if args.summary else build_report(car)
    if args.verb == "sep":
        x, y = _vertex(ctx, args.x), _vertex(ctx, args.y)
        fl = car.flesh
        cut = report_separating_mincut(car, fl.phi[x], fl.phi[y])
        if cut is None:
            return 0, "none\n"
        return 0, dot.serialize_cut(cut, cut_capacity(ctx.graph, cut)) + "\n"
    if args.verb == "strip":
        return 0, dot.strip_text(strip_for_minimal_cut(car, _minimal_cut(car, args.cut)))
    if args.verb == "dst":
        return 0, dot.strip_text(build_Dst(car, *_steiner_pair(car, args.s, args.t)))
    # export
    what = args.what
    if what == "flesh":
        return 0, dot.flesh_dot(car.flesh)
    if what == "skeleton":
        return 0, dot.skeleton_dot(car.skeleton)
    if what.startswith("strip:"):
        return 0, dot.strip_dot(strip_for_minimal_cut(car, _minimal_cut(car, _int(what[6:]))))
    if what.startswith("dst:"):
        parts = what[4:].split(",")
        if len(parts) != 2:
            raise DomainError("expected dst:<s>,<t>")
        return 0, dot.strip_dot(build_Dst(car, *_steiner_pair(car, _int(parts[0]), _int(parts[1]))), name="dst")
    raise DomainError(f"unknown export target {what!r}")


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DomainError(f"not an integer: {text!r}") from None


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        code, text = _run(args)
    except GraphFormatError as exc:
        print(f"carcass: {exc}", file=sys.stderr)
        return 2
    except InvariantBreach as exc:
        print(f"carcass: invariant breach: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"carcass: {exc}", file=sys.stderr)
        return 1
    except CarcassError as exc:  # pragma: no cover - every subclass is handled above
        print(f"carcass: {exc}", file=sys.stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"carcass: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


run = main
