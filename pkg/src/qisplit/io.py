"""JSON instance files, certificate / outcome / report serialization, and an
edge-list reader.

Real numbers travel as strings (``"1.5"``, ``"1/3"``) so exact values survive
a round trip; vertex indices and counts are plain integers.  Field order is
fixed, making serialization byte-stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .constructions import Orientation, SplitResult, vertex_split
from .graph_core import (
    EdgeWeighting,
    Graph,
    GraphError,
    Number,
    VertexMap,
    format_number,
    parse_weight,
)
from .qi_verify import QIReport, Violation
from .weight_solver import SolveOutcome
from .witness import RefutationCertificate


@dataclass(frozen=True)
class Instance:
    graph: Graph
    weights: Optional[EdgeWeighting] = None
    orientation: Optional[Orientation] = None
    image: Optional[tuple[int, ...]] = None
    target: Optional["Instance"] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.image is None) != (self.target is None):
            raise GraphError("a map needs a target instance and vice versa")
        if self.image is not None:
            VertexMap(self.graph, self.target.graph, self.image)

    @property
    def vertex_map(self) -> Optional[VertexMap]:
        if self.image is None:
            return None
        return VertexMap(self.graph, self.target.graph, self.image)


def number_out(x: Number):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return format_number(x)


def number_in(text) -> Number:
    if text == "inf":
        return math.inf
    return parse_weight(text)


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_dict(d: dict) -> Graph:
    return _graph_and_order(d)[0]


def _graph_and_order(d: dict) -> tuple[Graph, list[int]]:
    """The graph plus, per canonical edge, its position in the file's edge list."""
    raw = [(int(u), int(v)) for u, v in d["edges"]]
    g = Graph.from_edges(int(d["n"]), raw)
    pos = {(min(e), max(e)): i for i, e in enumerate(raw)}
    return g, [pos[e] for e in g.edges]


def instance_to_dict(inst: Instance) -> dict:
    out: dict[str, Any] = {"graph": graph_to_dict(inst.graph)}
    if inst.weights is not None:
        out["weights"] = [format_number(x) for x in inst.weights.values]
    if inst.orientation is not None:
        out["orientation"] = list(inst.orientation.tails)
    if inst.image is not None:
        out["map"] = list(inst.image)
        out["target"] = instance_to_dict(inst.target)
    out["metadata"] = inst.metadata
    return out


def instance_from_dict(d: dict) -> Instance:
    g, order = _graph_and_order(d["graph"])

    def parallel(key):
        values = d[key]
        if len(values) != g.m:
            raise GraphError(f"{key} has {len(values)} entries for {g.m} edges")
        return [values[i] for i in order]

    weights = None
    if d.get("weights") is not None:
        weights = EdgeWeighting.from_values(g, parallel("weights"))
    orientation = None
    if d.get("orientation") is not None:
        orientation = Orientation(g, tuple(int(t) for t in parallel("orientation")))
    image = target = None
    if d.get("map") is not None:
        if d.get("target") is None:
            raise GraphError("instance has a map but no target")
        image = tuple(int(x) for x in d["map"])
        target = instance_from_dict(d["target"])
    return Instance(g, weights, orientation, image, target, dict(d.get("metadata") or {}))


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    try:
        return instance_from_dict(data)
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed instance: {exc!r}") from None


def split_to_instance(split: SplitResult, target: Instance, metadata: dict) -> Instance:
    meta = dict(metadata)
    meta["split_vertices"] = list(split.split_vertices)
    meta["minus_of"] = list(split.minus_of)
    meta["plus_of"] = list(split.plus_of)
    tgt = Instance(target.graph, target.weights, split.orientation, None, None, target.metadata)
    return Instance(split.graph, None, None, split.projection.image, tgt, meta)


def split_from_instance(inst: Instance) -> SplitResult:
    """Rebuild the split from its target and orientation and check it matches."""
    if inst.target is None or inst.target.orientation is None:
        raise GraphError("not a split instance: need a target with an orientation")
    chosen = inst.metadata.get("split_vertices")
    split = vertex_split(inst.target.graph, inst.target.orientation, chosen)
    if split.graph != inst.graph or split.projection.image != inst.image:
        raise GraphError("instance does not match the split of its target")
    return split


# ---------------------------------------------------------------------------
# results


def certificate_to_dict(cert: RefutationCertificate) -> dict:
    return {
        "case": cert.case,
        "pair": list(cert.pair),
        "d_G": number_out(cert.d_G),
        "d_Hw": number_out(cert.d_Hw),
        "C": cert.C,
        "inequality": cert.inequality,
        "supporting_path": None if cert.supporting_path is None else list(cert.supporting_path),
    }


def certificate_from_dict(d: dict) -> RefutationCertificate:
    path = d.get("supporting_path")
    return RefutationCertificate(
        case=d["case"],
        pair=(int(d["pair"][0]), int(d["pair"][1])),
        d_G=number_in(d["d_G"]),
        d_Hw=number_in(d["d_Hw"]),
        C=int(d["C"]),
        inequality=d["inequality"],
        supporting_path=None if path is None else tuple(int(v) for v in path),
    )


def _violation_out(v: Optional[Violation]):
    if v is None:
        return None
    return {"pair": [v.x, v.y], "d_G": number_out(v.d_domain), "d_H": number_out(v.d_codomain)}


def _violation_in(d) -> Optional[Violation]:
    if d is None:
        return None
    return Violation(int(d["pair"][0]), int(d["pair"][1]), number_in(d["d_G"]), number_in(d["d_H"]))


def report_to_dict(r: QIReport) -> dict:
    return {
        "L": number_out(r.L),
        "C": number_out(r.C),
        "verdict": r.verdict,
        "upper_violation": _violation_out(r.upper_violation),
        "lower_violation": _violation_out(r.lower_violation),
        "surjectivity_radius": number_out(r.surjectivity_radius),
        "farthest_uncovered": r.farthest_uncovered,
        "tight_C_for_L": number_out(r.tight_C_for_L),
    }


def report_from_dict(d: dict) -> QIReport:
    return QIReport(
        L=number_in(d["L"]),
        C=number_in(d["C"]),
        verdict=bool(d["verdict"]),
        upper_violation=_violation_in(d["upper_violation"]),
        lower_violation=_violation_in(d["lower_violation"]),
        surjectivity_radius=number_in(d["surjectivity_radius"]),
        farthest_uncovered=d["farthest_uncovered"],
        tight_C_for_L=number_in(d["tight_C_for_L"]),
    )


def outcome_to_dict(o: SolveOutcome) -> dict:
    def weights(w):
        return None if w is None else [format_number(x) for x in w.values]

    return {
        "status": o.status,
        "basis": o.basis,
        "reason": o.reason,
        "weights": weights(o.weighting),
        "integer_weights": weights(o.integer_weighting),
        "proof": o.proof,
        "certificate": None if o.certificate is None else certificate_to_dict(o.certificate),
        "iterations": o.iterations,
        "constraints_generated": o.constraints_generated,
        "meta": o.meta,
    }


def outcome_from_dict(d: dict, h: Graph) -> SolveOutcome:
    def weights(v):
        return None if v is None else EdgeWeighting.from_values(h, v)

    cert = d.get("certificate")
    return SolveOutcome(
        status=d["status"],
        weighting=weights(d.get("weights")),
        basis=d.get("basis"),
        proof=d.get("proof"),
        certificate=None if cert is None else certificate_from_dict(cert),
        reason=d.get("reason", ""),
        iterations=int(d.get("iterations", 0)),
        constraints_generated=int(d.get("constraints_generated", 0)),
        integer_weighting=weights(d.get("integer_weights")),
        meta=dict(d.get("meta") or {}),
    )


# ---------------------------------------------------------------------------
# edge lists


def read_edge_list(text: str) -> Instance:
    """Parse a whitespace edge list.

    Accepts DIMACS (``p edge n m`` header, ``e u v`` lines, 1-based) or plain
    ``u v [weight]`` lines (0-based; ``n`` is one more than the largest label).
    Lines starting with ``c`` or ``#`` are comments.
    """
    n = None
    dimacs = False
    edges, weights = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "#") or parts[0].startswith("#"):
            continue
        if parts[0] == "p":
            dimacs = True
            n = int(parts[2])
            continue
        if parts[0] == "e":
            if not dimacs:
                raise GraphError(f"line {lineno}: 'e' line before 'p' header")
            parts = parts[1:]
        try:
            u, v = int(parts[0]), int(parts[1])
        except (IndexError, ValueError):
            raise GraphError(f"line {lineno}: cannot parse {raw!r}") from None
        if dimacs:
            u, v = u - 1, v - 1
        edges.append((u, v))
        weights.append(parts[2] if len(parts) > 2 else None)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    g = Graph.from_edges(n, edges)
    w = None
    if any(x is not None for x in weights):
        if None in weights:
            raise GraphError("either every edge or no edge carries a weight")
        by_edge = {(min(e), max(e)): x for e, x in zip(edges, weights)}
        w = EdgeWeighting.from_values(g, [by_edge[e] for e in g.edges])
    return Instance(g, w, metadata={"source": "edge-list"})
