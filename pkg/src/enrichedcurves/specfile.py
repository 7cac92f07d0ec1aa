"""Reading graph documents (JSON).

Document shape::

    {"vertices": ["u", "v"],
     "edges": [{"id": "e1", "ends": ["u", "v"], "label": "x"}, ...],
     "points": {"generic": ["x"]}}

``label`` defaults to the edge id.  The point ``closed`` (no unit labels)
is always defined.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .graph import GraphError, MultiGraph
from .specialization import FieldPoint, LabeledGraph


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class GraphSpec:
    lg: LabeledGraph
    points: dict[str, FieldPoint] = field(default_factory=dict)

    def point(self, name: str) -> FieldPoint:
        if name not in self.points:
            raise SpecError(f"unknown point {name!r}; known: {', '.join(self.points)}")
        return self.points[name]


def _line_of(text: str, token: str) -> int | None:
    m = re.search(re.escape(json.dumps(token)), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def parse_spec(text: str) -> GraphSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise SpecError("document must be an object", 1)
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) and v for v in vertices):
        raise SpecError("'vertices' must be a list of nonempty strings", _line_of(text, "vertices"))
    seen = set()
    for v in vertices:
        if v in seen:
            raise SpecError(f"duplicate vertex id {v!r}", _line_of(text, v))
        seen.add(v)
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise SpecError("'edges' must be a list", _line_of(text, "edges"))
    triples, labels = [], {}
    for rec in edges:
        if not isinstance(rec, dict) or not isinstance(rec.get("id"), str) or not rec["id"]:
            raise SpecError("every edge needs a nonempty string 'id'", _line_of(text, "edges"))
        e = rec["id"]
        if e in labels:
            raise SpecError(f"duplicate edge id {e!r}", _line_of(text, e))
        ends = rec.get("ends")
        if not isinstance(ends, list) or len(ends) != 2:
            raise SpecError(f"edge {e!r}: 'ends' must list two vertices", _line_of(text, e))
        for x in ends:
            if x not in seen:
                raise SpecError(f"edge {e!r}: unknown vertex {x!r}", _line_of(text, e))
        label = rec.get("label", e)
        if not isinstance(label, str) or not label:
            raise SpecError(f"edge {e!r}: label must be a nonempty string", _line_of(text, e))
        triples.append((e, ends[0], ends[1]))
        labels[e] = label
    try:
        g = MultiGraph(vertices, triples)
    except GraphError as exc:
        raise SpecError(str(exc)) from None
    lg = LabeledGraph(g, labels)
    points = {"closed": FieldPoint()}
    raw = doc.get("points", {})
    if not isinstance(raw, dict):
        raise SpecError("'points' must map names to label lists", _line_of(text, "points"))
    known = set(lg.labels)
    for name, units in raw.items():
        if not isinstance(units, list) or not all(isinstance(u, str) for u in units):
            raise SpecError(f"point {name!r} must be a list of labels", _line_of(text, name))
        bad = [u for u in units if u not in known]
        if bad:
            raise SpecError(f"point {name!r}: unknown label(s) {bad}", _line_of(text, name))
        points[name] = FieldPoint(units)
    return GraphSpec(lg, points)


def dump_spec(lg: LabeledGraph, points: dict[str, FieldPoint] | None = None) -> str:
    g = lg.graph
    doc = {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "ends": list(g.ends[e]), "label": lg.label[e]} for e in g.edges],
    }
    if points:
        doc["points"] = {k: sorted(p.units) for k, p in points.items() if k != "closed"}
    return json.dumps(doc, indent=2)
