"""Command-line entry point: ``chromagallai <subcommand> ...``.

Exit codes: 0 success (``check``: the colouring avoids the pattern), 1 a
bichromatic witness was found (``check``) or a battery criterion failed
(``verify``), 2 bad input, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import Any, Sequence

from .errors import CertificateError, ChromaError, GraphFormatError, InvariantError, PreconditionError
from .extremal import (
    AllCyclesFrom,
    BalancedBipartite,
    DisjointCliques,
    ModColoredCycle,
    PathLen,
    SharedVertexCliques,
    associated_pattern,
    check_path_theorem,
    compute_ex_c,
    compute_ex_classic,
    construct,
    construction_is_valid,
)
from .feasibility import check_certificate, decide_feasible
from .graph import ColoredGraph, Graph, emit_coloring, emit_graph6, improper_edge, parse_coloring, parse_graph_text
from .patterns import TreePattern
from .search import find_bichromatic_path, is_valid_double_star, is_valid_path
from .verify import CRITERIA, run_battery
from .witness import embed_tree_bichromatic, extract_bichromatic_path, find_double_star_bichromatic, is_valid_embedding


class InputError(ChromaError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args: argparse.Namespace) -> Graph:
    if not args.graph:
        raise InputError("--graph is required")
    return parse_graph_text(_read(args.graph))


def _load_colored(args: argparse.Namespace) -> ColoredGraph:
    g = _load_graph(args)
    if not args.coloring:
        raise InputError("--coloring is required")
    colors = parse_coloring(_read(args.coloring), g.n)
    bad = improper_edge(g, colors)
    if bad is not None:
        raise InputError(f"coloring is not proper: edge {bad[0]}-{bad[1]} has both ends colored {colors[bad[0]]}")
    return ColoredGraph(g, colors)


_TREE_NAME = re.compile(r"^(?:P_?(\d+)|S_?(\d+),(\d+)|K_?1,(\d+))$")


def _load_tree(arg: str | None) -> TreePattern:
    """A tree file, or one of the shorthands P_l, S_a,b, K_1,l."""
    if not arg:
        raise InputError("--tree is required")
    if not os.path.exists(arg):
        m = _TREE_NAME.match(arg)
        if m is None:
            raise InputError(f"{arg} is neither a file nor a tree name like P_3, S_1,2 or K_1,3")
        if m.group(1):
            return TreePattern.path(int(m.group(1)))
        if m.group(2):
            return TreePattern.double_star(int(m.group(2)), int(m.group(3)))
        return TreePattern.star(int(m.group(4)))
    return TreePattern.parse(_read(arg), name=Path(arg).stem)


def _need(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"-{name} is required for {args.command}")


def _emit(args: argparse.Namespace, payload: dict[str, Any], human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _seq(vertices: Sequence[int]) -> str:
    return " ".join(map(str, vertices))


# -- subcommands --------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    _need(args, "l")
    if args.l < 1:
        raise InputError("-l must be >= 1")
    cg = _load_colored(args)
    path = find_bichromatic_path(cg, args.l)
    if path is None:
        _emit(args, {"avoids": True, "l": args.l}, f"avoids: no P_{args.l} with differently colored ends")
        return 0
    a, b = path.endpoints
    if not is_valid_path(cg.graph, path, args.l) or cg.coloring[a] == cg.coloring[b]:
        raise CertificateError("search returned an invalid path")
    _emit(args, {"avoids": False, "l": args.l, "witness": list(path.vertices)},
          f"witness: {_seq(path.vertices)} (colors {cg.coloring[a]} and {cg.coloring[b]})")
    return 1


def cmd_feasible(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    t = _load_tree(args.tree)
    out = decide_feasible(g, t)
    if not check_certificate(g, t, out):
        raise CertificateError("feasibility certificate failed re-verification")
    if out.feasible:
        human = f"feasible for {t.name}: coloring {_seq(out.coloring)}"
    else:
        chain = "; ".join(_seq(sorted(s)) for s in out.chain)
        human = f"infeasible for {t.name}: edge {out.conflict_edge[0]}-{out.conflict_edge[1]} forced monochromatic via {chain}"
    _emit(args, out.to_json(), human)
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    _need(args, "k")
    cg = _load_colored(args)
    path, trace = extract_bichromatic_path(cg, args.k)
    a, b = path.endpoints
    if not is_valid_path(cg.graph, path, 2 * args.k + 1) or cg.coloring[a] == cg.coloring[b]:
        raise CertificateError("extracted path failed re-validation")
    _emit(args, {"path": list(path.vertices), "trace": trace.to_json()},
          f"P_{2 * args.k + 1}: {_seq(path.vertices)}\ncases: {', '.join(trace.cases) or 'none'}; "
          f"fallbacks: {trace.fallbacks}")
    return 0


def cmd_double_star(args: argparse.Namespace) -> int:
    _need(args, "a", "b")
    cg = _load_colored(args)
    w, trace = find_double_star_bichromatic(cg, args.a, args.b)
    if not is_valid_double_star(cg.graph, w, args.a, args.b) or len({cg.coloring[x] for x in w.leaves}) < 2:
        raise CertificateError("double star failed re-validation")
    payload = {"u": w.u, "v": w.v, "A": list(w.A), "B": list(w.B), "branch": trace.branch}
    _emit(args, payload, f"centres {w.u} and {w.v}; leaves {_seq(w.A)} | {_seq(w.B)} ({trace.branch})")
    return 0


def cmd_embed_tree(args: argparse.Namespace) -> int:
    cg = _load_colored(args)
    t = _load_tree(args.tree)
    emb = embed_tree_bichromatic(cg, t)
    if not is_valid_embedding(cg.graph, t, emb.mapping) or len({cg.coloring[x] for x in emb.leaf_images}) < 2:
        raise CertificateError("tree embedding failed re-validation")
    mapping = {str(x): y for x, y in sorted(emb.mapping.items())}
    human = ", ".join(f"{x}->{y}" for x, y in sorted(emb.mapping.items()))
    _emit(args, {"tree": t.name, "mapping": mapping, "leaves": list(emb.leaf_images)},
          f"{t.name}: {human}; leaves {_seq(emb.leaf_images)}")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    _need(args, "n")
    if args.classic:
        _need(args, "l")
        forbidden = PathLen(args.l) if args.classic == "path" else AllCyclesFrom(args.l)
        report = compute_ex_classic(args.n, forbidden, workers=args.workers)
    elif args.tree:
        report = compute_ex_c(args.n, _load_tree(args.tree), workers=args.workers)
    elif args.k is not None:
        report = check_path_theorem(args.n, args.k, workers=args.workers).report
    else:
        raise InputError("enumerate needs --tree, -k, or --classic with -l")
    lines = [f"{report.pattern}, n={report.n}: value {report.value} "
             f"({report.feasible_count} of {report.scanned} classes qualify)",
             "extremal: " + " ".join(c.graph6 for c in report.extremal)]
    for b in report.bounds:
        lines.append(f"{b.name} [{b.kind}]: bound {b.bound}, {'holds' if b.holds else 'VIOLATED'}, "
                     f"{'met' if b.met else 'not met'}"
                     + (f", characterization {b.characterization}" if b.characterization else "")
                     + (f" ({b.note})" if b.note else ""))
    _emit(args, report.to_json(), "\n".join(lines))
    return 0


def _family(args: argparse.Namespace):
    if args.family == "bipartite":
        return BalancedBipartite(args.n)
    _need(args, "l")
    return {"cliques": DisjointCliques, "shared-vertex": SharedVertexCliques,
            "mod-cycle": ModColoredCycle}[args.family](args.n, args.l)


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def cmd_construct(args: argparse.Namespace) -> int:
    _need(args, "family", "n")
    spec = _family(args)
    cg = construct(spec)
    if not construction_is_valid(spec):
        raise InvariantError(f"construction {spec} does not avoid its pattern")
    g6, col = emit_graph6(cg.graph), emit_coloring(cg.coloring)
    pattern = associated_pattern(spec)
    if args.out:
        base = Path(args.out)
        # both payloads exist before either file is touched
        _write_atomic(base.with_suffix(".g6"), g6 + "\n")
        _write_atomic(base.with_suffix(".col"), col)
    payload = {"graph6": g6, "coloring": list(cg.coloring), "edges": cg.graph.edge_count(),
               "pattern": pattern.name if pattern else None}
    _emit(args, payload, f"{g6}\n{col.strip()}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    selection = args.only or None
    if selection and any(i not in CRITERIA for i in selection):
        raise InputError(f"criteria are numbered {min(CRITERIA)}..{max(CRITERIA)}")
    results = run_battery(selection, seed=args.seed, echo=None if args.json else print)
    passed = sum(r.passed for r in results)
    if args.json:
        print(json.dumps({"results": [{"criterion": r.number, "title": r.title, "passed": r.passed,
                                       "detail": r.detail} for r in results],
                          "passed": passed, "total": len(results)}, sort_keys=True))
    else:
        print(f"{passed}/{len(results)} criteria pass")
    return 0 if passed == len(results) else 1


COMMANDS = {
    "check": cmd_check,
    "feasible": cmd_feasible,
    "witness": cmd_witness,
    "double-star": cmd_double_star,
    "embed-tree": cmd_embed_tree,
    "enumerate": cmd_enumerate,
    "construct": cmd_construct,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph6 line or edge list ('n m' then m lines 'u v')")
    common.add_argument("--coloring", help="whitespace-separated colour per vertex")
    common.add_argument("--tree", help="tree file ('k' then k edges) or a name: P_3, S_1,2, K_1,3")
    for flag in "klabn":
        common.add_argument(f"-{flag}", type=int)
    common.add_argument("--json", action="store_true", help="emit JSON (sorted keys)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="chromagallai", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="is there a P_l with differently coloured ends?")
    sub.add_parser("feasible", parents=[common], help="forced-partition feasibility for a tree")
    sub.add_parser("witness", parents=[common], help="constructive P_{2k+1} extraction (e > k n)")
    sub.add_parser("double-star", parents=[common], help="S_{a,b} with bichromatic leaves")
    sub.add_parser("embed-tree", parents=[common], help="tree copy with bichromatic leaves")
    en = sub.add_parser("enumerate", parents=[common], help="exact extremal numbers by enumeration")
    en.add_argument("--classic", choices=["path", "cycles"], help="uncoloured ex(n, P_l) or ex(n, {C_>=l})")
    co = sub.add_parser("construct", parents=[common], help="build an extremal construction")
    co.add_argument("--family", choices=["cliques", "bipartite", "shared-vertex", "mod-cycle"])
    co.add_argument("--out", help="write OUT.g6 and OUT.col")
    ve = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    ve.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (InvariantError, CertificateError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (InputError, GraphFormatError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
