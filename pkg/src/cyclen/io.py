"""JSON and DOT serialisation.

Graph files look like::

    {"vertices": 4, "edges": [{"id": 0, "tail": 1, "head": 0, "length": "1/2"}, ...]}

Lengths are rational strings.  Report values are emitted as
``{"exact": "1023/1024", "approx": 0.9990234375}`` pairs: the exact string
is authoritative, the float is for reading only.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Sequence

from .graph import ClosedWalk, GraphError, WeightedMultigraph, build_graph
from .homology import Circulation, CycleWithMultiplicity
from .metric import PiMultiple
from .z2 import EdgeSetZ2

__all__ = [
    "graph_to_json",
    "graph_from_json",
    "load_graph",
    "dump_graph",
    "graph_digest",
    "to_dot",
    "exact",
    "edge_set_to_json",
    "edge_set_from_json",
    "circulation_to_json",
    "circulation_from_json",
    "walk_to_json",
    "walk_from_json",
    "cycle_to_json",
]


def graph_to_json(g: WeightedMultigraph) -> dict:
    return {
        "vertices": g.n,
        "edges": [
            {"id": k, "tail": e.tail, "head": e.head, "length": str(e.length)} for k, e in enumerate(g.edges)
        ],
    }


def graph_from_json(data: Any) -> WeightedMultigraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphError("graph JSON needs 'vertices' and 'edges'")
    n = data["vertices"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError("'vertices' must be an integer")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    rows = []
    for pos, item in enumerate(edges):
        if not isinstance(item, dict):
            raise GraphError(f"edge entry {pos} is not an object")
        try:
            rows.append((item.get("id", pos), item["tail"], item["head"], item["length"]))
        except KeyError as exc:
            raise GraphError(f"edge entry {pos} lacks {exc}") from exc
    rows.sort(key=lambda r: r[0] if isinstance(r[0], int) else -1)
    if [r[0] for r in rows] != list(range(len(rows))):
        raise GraphError("edge ids must be 0..m-1")
    for r in rows:
        if isinstance(r[3], float):
            raise GraphError(f"edge {r[0]}: length must be a rational string, not a float")
    return build_graph(n, [(t, h, str(length)) for _, t, h, length in rows])


def dump_graph(g: WeightedMultigraph, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g), fh, indent=2)
        fh.write("\n")


def load_graph(path: str) -> WeightedMultigraph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: not valid JSON ({exc})") from exc
    return graph_from_json(data)


def graph_digest(g: WeightedMultigraph) -> str:
    blob = json.dumps(graph_to_json(g), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def to_dot(g: WeightedMultigraph, flows: Sequence[int] | None = None, name: str = "G") -> str:
    """Undirected DOT text, edges labelled by length (and flow when given)."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for k, e in enumerate(g.edges):
        label = f"e{k}: {e.length}"
        attrs = ""
        if flows is not None and flows[k]:
            label += f" [f={flows[k]:+d}]"
            attrs = ", penwidth=2"
        lines.append(f'  {e.tail} -- {e.head} [label="{label}"{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def exact(value: Fraction | PiMultiple | int) -> dict:
    if isinstance(value, PiMultiple):
        return {"exact": str(value), "approx": float(value)}
    value = Fraction(value)
    return {"exact": str(value), "approx": float(value)}


def edge_set_to_json(z: EdgeSetZ2) -> list[int]:
    return z.edges


def edge_set_from_json(g: WeightedMultigraph, data: Any) -> EdgeSetZ2:
    if not isinstance(data, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in data):
        raise ValueError("edge set must be a list of edge indices")
    if len(set(data)) != len(data):
        raise ValueError("edge set lists an edge twice")
    return EdgeSetZ2.of(g, data)


def circulation_to_json(c: Circulation) -> list[dict]:
    return c.pairs()


def circulation_from_json(g: WeightedMultigraph, data: Any) -> Circulation:
    if not isinstance(data, list):
        raise ValueError("circulation must be a list of {edge, flow} objects")
    pairs = []
    for item in data:
        if not isinstance(item, dict) or not isinstance(item.get("edge"), int) or not isinstance(item.get("flow"), int):
            raise ValueError(f"bad circulation entry {item!r}")
        if not 0 <= item["edge"] < g.m:
            raise ValueError(f"no edge {item['edge']}")
        pairs.append((item["edge"], item["flow"]))
    return Circulation.from_pairs(g, pairs)


def walk_to_json(w: ClosedWalk) -> dict:
    return {"start": w.start, "steps": [list(s) for s in w.steps]}


def walk_from_json(data: Any) -> ClosedWalk:
    if not isinstance(data, dict) or "start" not in data or "steps" not in data:
        raise ValueError("walk needs 'start' and 'steps'")
    steps = data["steps"]
    if not isinstance(steps, list) or not all(isinstance(s, list) and len(s) == 2 for s in steps):
        raise ValueError("walk steps must be [edge, direction] pairs")
    return ClosedWalk(int(data["start"]), tuple((int(k), int(d)) for k, d in steps))


def cycle_to_json(c: CycleWithMultiplicity) -> dict:
    return {
        "start": c.start,
        "steps": [list(s) for s in c.steps],
        "edges": sorted(c.edges),
        "multiplicity": c.multiplicity,
        "length": exact(c.cycle_length),
    }
