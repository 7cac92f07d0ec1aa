"""Labelled graphs, field points and specialisation.

A label is an opaque id standing for the principal ideal attached to a node;
two edges carry equal ideals exactly when their label ids are equal.  At a
field point each label is either a unit or zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .graph import (
    Contraction,
    GraphError,
    MultiGraph,
    RelativeComponent,
    block_vertices,
    circuit_partition,
    connected_components,
    contract,
    enumerate_circuits,
    relative_components,
)


class LabeledGraph:
    """A multigraph with a label id on every edge."""

    __slots__ = ("graph", "label")

    def __init__(self, graph: MultiGraph, label: Mapping[str, str]):
        missing = set(graph.edges) - set(label)
        if missing:
            raise GraphError(f"unlabelled edge(s): {sorted(missing)}")
        extra = set(label) - set(graph.edges)
        if extra:
            raise GraphError(f"labels for unknown edge(s): {sorted(extra)}")
        self.graph = graph
        self.label = MappingProxyType({e: label[e] for e in graph.edges})

    @classmethod
    def distinct(cls, graph: MultiGraph) -> "LabeledGraph":
        """Label every edge by its own id (independent smoothing parameters)."""
        return cls(graph, {e: e for e in graph.edges})

    @property
    def labels(self) -> tuple[str, ...]:
        seen = {}
        for e in self.graph.edges:
            seen.setdefault(self.label[e], None)
        return tuple(seen)

    def edges_with_labels(self, labels: Iterable[str]) -> frozenset[str]:
        labels = set(labels)
        return frozenset(e for e in self.graph.edges if self.label[e] in labels)

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.graph == other.graph and dict(self.label) == dict(other.label)

    def __hash__(self):
        return hash((self.graph, frozenset(self.label.items())))

    def __repr__(self):
        return f"LabeledGraph({self.graph!r}, labels={dict(self.label)})"


@dataclass(frozen=True)
class FieldPoint:
    """A field-valued point: the labels in ``units`` are units, all others vanish."""

    units: frozenset[str] = frozenset()

    def __init__(self, units: Iterable[str] = ()):
        object.__setattr__(self, "units", frozenset(units))

    def __repr__(self):
        return "FieldPoint({" + ", ".join(sorted(self.units)) + "})"


CLOSED_POINT = FieldPoint()


def _check_point(lg: LabeledGraph, p: FieldPoint) -> None:
    unknown = p.units - set(lg.labels)
    if unknown:
        raise GraphError(f"unknown label id(s): {sorted(unknown)}")


def specialize(lg: LabeledGraph, p: FieldPoint) -> Contraction:
    """Contract exactly the edges whose labels are units at ``p``."""
    _check_point(lg, p)
    return contract(lg.graph, lg.edges_with_labels(p.units))


def specialized_graph(lg: LabeledGraph, p: FieldPoint) -> LabeledGraph:
    """The graph of the curve over ``p`` with its induced labels."""
    f = specialize(lg, p)
    return LabeledGraph(f.target, {e: lg.label[e] for e in f.target.edges})


def is_one_aligned(lg: LabeledGraph) -> bool:
    """True iff every circuit has all of its edge labels equal."""
    for c in enumerate_circuits(lg.graph):
        if len({lg.label[e] for e in c.edges}) > 1:
            return False
    return True


def is_one_aligned_at(lg: LabeledGraph, p: FieldPoint) -> bool:
    return is_one_aligned(specialized_graph(lg, p))


def is_aligned_contraction(f: Contraction) -> bool:
    """Per circuit-connected block of the source: all vertices merge, or none do."""
    for block in circuit_partition(f.source):
        vs = block_vertices(f.source, block)
        images = {f.vertex_map[v] for v in vs}
        if len(images) != 1 and len(images) != len(vs):
            return False
    return True


# -- the bijection on relative components -----------------------------------


@dataclass(frozen=True)
class RelCompBijection:
    """Relative components (v, G) of the source with sp(v) not in sp(G),
    matched with the relative components of the target."""

    forward: Mapping[RelativeComponent, RelativeComponent]
    backward: Mapping[RelativeComponent, RelativeComponent]

    def __len__(self):
        return len(self.forward)


def psi_bijection(lg: LabeledGraph, p: FieldPoint) -> RelCompBijection:
    """The map (v, G) -> (sp(v), sp(G)) for the specialisation of ``lg`` at ``p``.

    Only defined when ``lg`` is 1-aligned; raises ``ValueError`` otherwise.
    """
    if not is_one_aligned(lg):
        raise ValueError("psi_bijection requires a 1-aligned labelled graph")
    f = specialize(lg, p)
    src_rcs = relative_components(f.source)
    tgt_rcs = {(rc.v, rc.G): rc for rc in relative_components(f.target)}
    forward = {}
    for rc in src_rcs:
        w = f.vertex_map[rc.v]
        H = f.image(rc.G)
        if w in H:
            continue
        try:
            forward[rc] = tgt_rcs[(w, H)]
        except KeyError:
            raise AssertionError(f"image of {rc} is not a relative component") from None
    backward = {}
    for (w, H), trc in tgt_rcs.items():
        W = f.fiber(w)
        # the unique v in W adjacent to the component of (source minus W) lying over H
        pre = [c for c in connected_components(f.source, removed=W) if f.image(c) == H]
        if len(pre) != 1:
            raise AssertionError(f"no unique preimage component for {trc}")
        G = pre[0]
        vs = {x for e in f.source.boundary(G) for x in f.source.ends[e] if x in W}
        if len(vs) != 1:
            raise AssertionError(f"preimage of {trc} touches several vertices of the fiber")
        v = vs.pop()
        match = [rc for rc in src_rcs if rc.v == v and rc.G == G]
        if len(match) != 1:
            raise AssertionError(f"no relative component over {trc}")
        backward[trc] = match[0]
    return RelCompBijection(MappingProxyType(forward), MappingProxyType(backward))


# -- dimension of the enriched fibre ----------------------------------------


def dimension_by_blocks(g: MultiGraph) -> int:
    """Sum over circuit-connected blocks of (#edges - 1)."""
    return sum(len(block) - 1 for block in circuit_partition(g))


def dimension_by_vertices(g: MultiGraph) -> int:
    """#non-loop edges + #vertices - sum_v #components(g - v) - 1."""
    pi0 = sum(len(connected_components(g, removed=[v])) for v in g.vertices)
    return len(g.non_loop_edges) + len(g.vertices) - pi0 - 1


def dimension_N(g: MultiGraph) -> int:
    """Dimension of the enriched-structure fibre over the closed point.

    Computed by both formulas; a disagreement raises ``AssertionError``.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    a = dimension_by_blocks(g)
    b = dimension_by_vertices(g)
    if a != b:
        raise AssertionError(f"dimension formulas disagree: {a} != {b}")
    return a
