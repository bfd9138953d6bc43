"""Command-line interface.

Exit codes: 0 success / positive verdict, 1 legitimate negative answer,
2 usage or input error.  Every random choice needs an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

from . import constructions as cons
from .graph_core import (
    INF,
    EdgeWeighting,
    Graph,
    GraphError,
    GraphTooLargeError,
    chromatic_number_exact,
    chromatic_upper_greedy,
    diameter,
    format_number,
    girth,
    is_connected,
)
from .io import (
    Instance,
    certificate_to_dict,
    dumps,
    instance_to_dict,
    load_instance,
    number_out,
    outcome_to_dict,
    read_edge_list,
    report_to_dict,
    split_from_instance,
    split_to_instance,
)
from .qi_verify import check_quasi_isometry
from .weight_solver import DEFAULT_GRID, solve_bruteforce, solve_lp
from .witness import LIGHT_THRESHOLD, refute_weighting

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> Instance:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    if path.endswith((".txt", ".el", ".dimacs", ".col")):
        return read_edge_list(text)
    return load_instance(text)


def _emit(obj: dict) -> None:
    sys.stdout.write(dumps(obj))


def _graph_stats(g: Graph) -> dict:
    return {"girth": number_out(girth(g)), "chromatic_greedy": chromatic_upper_greedy(g)}


def _emit_graph(g: Graph, metadata: dict) -> int:
    meta = dict(metadata)
    meta.update(_graph_stats(g))
    _emit(instance_to_dict(Instance(g, metadata=meta)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "cycle":
        return _emit_graph(cons.cycle_graph(args.n), {"generator": "cycle", "n": args.n})
    if kind == "path":
        return _emit_graph(cons.path_graph(args.n), {"generator": "path", "n": args.n})
    if kind == "complete":
        return _emit_graph(cons.complete_graph(args.n), {"generator": "complete", "n": args.n})
    if kind == "cage":
        return _emit_graph(cons.cage(args.name), {"generator": "cage", "name": args.name})
    if kind == "mycielski":
        g = cons.complete_graph(2)
        for _ in range(args.iterations):
            g = cons.mycielski(g)
        return _emit_graph(g, {"generator": "mycielski", "iterations": args.iterations})
    if kind == "random-girth":
        if args.seed is None:
            raise UsageError("random-girth needs an explicit --seed")
        sample = cons.random_high_girth(args.n, args.p, args.girth, args.seed)
        meta = {
            "generator": "random-girth",
            "n": args.n,
            "p": args.p,
            "min_girth": args.girth,
            "seed": args.seed,
            "deleted": sample.deleted,
        }
        return _emit_graph(sample.graph, meta)
    raise UsageError(f"unknown generator {kind}")


# ---------------------------------------------------------------------------
# transformations


def _orientation_for(inst: Instance, mode: Optional[str], seed: Optional[int]):
    if mode is None:
        if inst.orientation is None:
            raise UsageError(
                "split needs an orientation: pass --orient random|low-to-high|bipartite"
            )
        return inst.orientation
    mode = mode.replace("-", "_")
    if mode == "random" and seed is None:
        raise UsageError("--orient random needs an explicit --seed")
    return cons.orient(inst.graph, mode, seed)


def cmd_split(args) -> int:
    inst = _read(args.input)
    o = _orientation_for(inst, args.orient, args.seed)
    chosen = None
    if inst.metadata.get("construction") == "subdivide" and not args.all_vertices:
        chosen = range(inst.metadata["branch_vertices"])
    split = cons.vertex_split(inst.graph, o, chosen)
    meta = {"construction": "split", "orient": args.orient or "given", "seed": args.seed}
    target = Instance(inst.graph, inst.weights, o, metadata=inst.metadata)
    _emit(instance_to_dict(split_to_instance(split, target, meta)))
    return EXIT_OK


def cmd_subdivide(args) -> int:
    inst = _read(args.input)
    g, phi = cons.subdivide(inst.graph, args.t)
    meta = {"construction": "subdivide", "t": args.t, "branch_vertices": inst.graph.n}
    target = Instance(inst.graph, inst.weights, inst.orientation, metadata=inst.metadata)
    _emit(instance_to_dict(Instance(g, None, None, phi.image, target, meta)))
    return EXIT_OK


def cmd_attach(args) -> int:
    inst = _read(args.input)
    g, anchor = cons.attach_pendant_paths(inst.graph, args.base, args.stride)
    meta = {
        "construction": "attach",
        "base": args.base,
        "stride": args.stride,
        "tips": {str(k): v for k, v in sorted(cons.pendant_tips(anchor).items())},
    }
    target = Instance(inst.graph, inst.weights, inst.orientation, metadata=inst.metadata)
    _emit(instance_to_dict(Instance(g, None, None, anchor.image, target, meta)))
    return EXIT_OK


def cmd_orient(args) -> int:
    inst = _read(args.input)
    o = _orientation_for(inst, args.mode, args.seed)
    meta = dict(inst.metadata, orient=args.mode, orient_seed=args.seed)
    _emit(instance_to_dict(Instance(inst.graph, inst.weights, o, inst.image, inst.target, meta)))
    return EXIT_OK


def _weights_override(g: Graph, text: Optional[str], fallback: Optional[EdgeWeighting]):
    if text is None:
        return fallback
    values = [v for v in text.split(",") if v.strip()]
    if len(values) == 1:
        return EdgeWeighting.constant(g, values[0])
    return EdgeWeighting.from_values(g, values)


def cmd_weights(args) -> int:
    inst = _read(args.input)
    target = inst.target
    if args.on_target:
        if target is None:
            raise UsageError("--on-target needs an instance with a target")
        w = _weights_override(target.graph, args.values, None)
        target = Instance(target.graph, w, target.orientation, target.image, target.target, target.metadata)
        inst = Instance(inst.graph, inst.weights, inst.orientation, inst.image, target, inst.metadata)
    else:
        w = _weights_override(inst.graph, args.values, None)
        inst = Instance(inst.graph, w, inst.orientation, inst.image, inst.target, inst.metadata)
    _emit(instance_to_dict(inst))
    return EXIT_OK


# ---------------------------------------------------------------------------
# analysis


def cmd_verify(args) -> int:
    inst = _read(args.input)
    phi = inst.vertex_map
    if phi is None:
        raise UsageError("verify needs an instance with a map and a target")
    wh = _weights_override(inst.target.graph, args.weights, inst.target.weights)
    report = check_quasi_isometry(phi, args.L, args.C, inst.weights, wh)
    _emit(report_to_dict(report))
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def _nat(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def cmd_refute(args) -> int:
    inst = _read(args.input)
    split = split_from_instance(inst)
    w = _weights_override(split.source, args.weights, inst.target.weights)
    if w is None:
        w = EdgeWeighting.unit(split.source)
    outcome = refute_weighting(split, w, args.C, Fraction(args.threshold))
    if outcome.certificate is None:
        _emit({"result": "none", "weights": [format_number(x) for x in w.values]})
        return EXIT_NEGATIVE
    _emit(certificate_to_dict(outcome.certificate))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _read(args.input)
    split = split_from_instance(inst)
    grid = [g for g in args.grid.split(",") if g.strip()]
    if args.mode == "grid":
        outcome = solve_bruteforce(split, args.C, grid, edge_limit=args.edge_limit)
    else:
        outcome = solve_lp(
            split,
            args.C,
            max_rounds=args.max_rounds,
            accept_hint=args.accept_hint,
            oracle_grid=grid if args.oracle else None,
        )
    _emit(outcome_to_dict(outcome))
    return {"SAT": EXIT_OK, "UNSAT": EXIT_NEGATIVE}.get(outcome.status, EXIT_NEGATIVE)


def cmd_stats(args) -> int:
    inst = _read(args.input)
    g = inst.graph
    try:
        chi = chromatic_number_exact(g, args.chromatic_limit)
    except GraphTooLargeError:
        chi = None
    degrees = [g.degree(v) for v in range(g.n)]
    connected = is_connected(g)
    out = {
        "n": g.n,
        "m": g.m,
        "connected": connected,
        "girth": number_out(girth(g)),
        "chromatic_exact": chi,
        "chromatic_greedy": chromatic_upper_greedy(g),
        "diameter": number_out(diameter(g)) if connected else number_out(INF),
        "degrees": {
            "min": min(degrees, default=0),
            "max": max(degrees, default=0),
            "mean": format_number(Fraction(sum(degrees), g.n) if g.n else Fraction(0)),
            "histogram": {str(k): v for k, v in sorted(Counter(degrees).items())},
        },
    }
    _emit(out)
    return EXIT_OK


def cmd_convert(args) -> int:
    inst = _read(args.input)
    _emit(instance_to_dict(inst))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qisplit",
        description="Vertex-split counterexamples to (1, C)-quasi-isometry under edge weightings.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph instance")
    gsub = gen.add_subparsers(dest="kind", required=True)
    for name in ("cycle", "path", "complete"):
        q = gsub.add_parser(name)
        q.add_argument("--n", type=int, required=True)
    q = gsub.add_parser("cage")
    q.add_argument("--name", default="petersen", choices=sorted(cons.CAGES))
    q = gsub.add_parser("mycielski", help="iterated Mycielskian of K2")
    q.add_argument("--iterations", type=int, default=1)
    q = gsub.add_parser("random-girth", help="G(n, p) with short cycles destroyed")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--girth", type=int, required=True)
    q.add_argument("--seed", type=int)
    gen.set_defaults(func=cmd_gen)

    def with_input(name, func, help_text):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("input", nargs="?", default="-", help="instance file (default: stdin)")
        q.set_defaults(func=func)
        return q

    q = with_input("split", cmd_split, "split every vertex into v- v+")
    q.add_argument("--orient", choices=["random", "low-to-high", "bipartite"])
    q.add_argument("--seed", type=int)
    q.add_argument(
        "--all-vertices",
        action="store_true",
        help="on a subdivided instance, split subdivision vertices too",
    )
    q = with_input("subdivide", cmd_subdivide, "replace each edge by a path")
    q.add_argument("--t", type=int, required=True)
    q = with_input("attach", cmd_attach, "attach pendant paths of lengths base + i*stride")
    q.add_argument("--base", type=int, required=True)
    q.add_argument("--stride", type=int, default=0)
    q = with_input("orient", cmd_orient, "orient the edges of an instance")
    q.add_argument("--mode", choices=["random", "low-to-high", "bipartite"], required=True)
    q.add_argument("--seed", type=int)
    q = with_input("weights", cmd_weights, "set edge weights (one value, or one per edge)")
    q.add_argument("--values", required=True)
    q.add_argument("--on-target", action="store_true")

    q = with_input("verify", cmd_verify, "check the embedded map at (L, C)")
    q.add_argument("--L", required=True)
    q.add_argument("--C", required=True)
    q.add_argument("--weights", help="target weights override, comma separated")
    q = with_input("refute", cmd_refute, "certify that the split map is not (1, C)")
    q.add_argument("--C", type=_nat, required=True)
    q.add_argument("--weights", help="target weights override, comma separated")
    q.add_argument("--threshold", default=str(LIGHT_THRESHOLD))
    q = with_input("solve-weights", cmd_solve, "search for a weighting making the map (1, C)")
    q.add_argument("--C", type=_nat, required=True)
    q.add_argument("--mode", choices=["grid", "lp"], default="lp")
    q.add_argument("--grid", default=",".join(DEFAULT_GRID))
    q.add_argument("--edge-limit", type=int, default=8)
    q.add_argument("--max-rounds", type=int, default=50)
    q.add_argument("--accept-hint", action="store_true")
    q.add_argument("--oracle", action="store_true", help="consult the grid oracle before UNSAT")
    q = with_input("stats", cmd_stats, "girth, chromatic number, diameter, degrees")
    q.add_argument("--chromatic-limit", type=int, default=30)
    with_input("convert", cmd_convert, "normalize an instance or edge list to JSON")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
