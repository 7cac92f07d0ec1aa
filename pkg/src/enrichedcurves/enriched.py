"""Enriched structures over F_q-points.

Over a field point all of whose labels vanish, the invertible quotient
attached to a relative component (v, G) is determined up to equivalence by
its scalars F_G(e), one per separating edge, up to a common factor.  We keep
the class in canonical form: the first separating edge (declaration order)
has scalar 1.

Orientation convention: an edge e from u to v contributes F_u(e)/F_v(e) to a
circuit product, where F_u is the scalar vector of the relative component
(u, G) with v in G.  A tuple of scalars is an enriched structure iff every
circuit product is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Mapping, Sequence

from .ffield import check_prime, inv, units
from .graph import (
    Circuit,
    Contraction,
    GraphError,
    MultiGraph,
    RelativeComponent,
    block_vertices,
    circuit_partition,
    connected_components,
    relative_components,
)
from .picard import CombLineBundle, is_trivial, tensor_all
from .specialization import (
    FieldPoint,
    LabeledGraph,
    is_aligned_contraction,
    specialize,
    specialized_graph,
)


def standard_multidegree(g: MultiGraph, rc: RelativeComponent) -> dict[str, int]:
    """Degrees of the invertible quotient for ``rc`` on each component.

    A vertex in G gets minus the number of separating edges at it; a vertex
    outside G gets plus that number (all of them land on rc.v).
    """
    _check_rc(g, rc)
    sep = rc.separating_edges
    deg = {}
    for x in g.vertices:
        k = sum(1 for e in sep if x in g.ends[e])
        deg[x] = -k if x in rc.G else k
    return deg


def _check_rc(g: MultiGraph, rc: RelativeComponent) -> None:
    if rc.v not in g.vertices or rc.v in rc.G or not rc.G <= set(g.vertices):
        raise GraphError(f"{rc} is not a relative component of this graph")
    if rc.G not in connected_components(g, removed=[rc.v]):
        raise GraphError(f"{rc} is not a relative component of this graph")
    if tuple(rc.separating_edges) != g.edges_between([rc.v], rc.G):
        raise GraphError(f"{rc} carries the wrong separating edges")


def realize(g: MultiGraph, rc: RelativeComponent, vec: Sequence[int], q: int) -> CombLineBundle:
    """The line bundle of ``rc`` with node scalars ``vec``.

    The scalar of a separating edge is taken in the orientation leaving rc.v;
    all other nodes glue with scalar 1.
    """
    sc = {}
    for e, s in zip(rc.separating_edges, vec):
        sc[e] = s if g.ends[e][0] == rc.v else inv(s, q)
    return CombLineBundle(g, q, standard_multidegree(g, rc), sc)


def normalize_vector(vec: Sequence[int], q: int) -> tuple[int, ...]:
    if any(x % q == 0 for x in vec):
        raise ValueError("scalars of an enriched structure must be nonzero")
    c = inv(vec[0], q)
    return tuple((x * c) % q for x in vec)


@dataclass(frozen=True)
class EnrichedPoint:
    """An enriched structure: one normalized scalar vector per relative component."""

    graph: MultiGraph
    q: int
    items: tuple[tuple[RelativeComponent, tuple[int, ...]], ...]

    @classmethod
    def from_scalars(cls, g: MultiGraph, scalars: Mapping[RelativeComponent, Sequence[int]], q: int) -> "EnrichedPoint":
        """Build the canonical form; raises if ``scalars`` is not an enriched structure."""
        if not is_enriched(g, scalars, q):
            raise ValueError("scalars do not define an enriched structure")
        return cls._unchecked(g, scalars, q)

    @classmethod
    def _unchecked(cls, g, scalars, q):
        items = tuple((rc, normalize_vector(scalars[rc], q)) for rc in relative_components(g))
        return cls(g, q, items)

    def as_dict(self) -> dict[RelativeComponent, tuple[int, ...]]:
        return dict(self.items)

    def scalar(self, rc: RelativeComponent, e: str) -> int:
        vec = self.as_dict()[rc]
        return vec[rc.separating_edges.index(e)]

    def component_at(self, u: str, other: str) -> RelativeComponent:
        """The relative component (u, G) with ``other`` in G."""
        for rc, _ in self.items:
            if rc.v == u and other in rc.G:
                return rc
        raise KeyError((u, other))

    def bundles(self) -> list[CombLineBundle]:
        return [realize(self.graph, rc, vec, self.q) for rc, vec in self.items]

    def sort_key(self):
        return tuple(vec for _, vec in self.items)

    def describe(self) -> str:
        parts = []
        for rc, vec in self.items:
            inner = ",".join(f"{e}={s}" for e, s in zip(rc.separating_edges, vec))
            parts.append(f"{rc}:[{inner}]")
        return " ".join(parts) if parts else "(empty)"


def is_enriched(g: MultiGraph, scalars: Mapping[RelativeComponent, Sequence[int]], q: int) -> bool:
    """Whether the scalar tuple is an enriched structure.

    Decided by triviality of the tensor product of the realized bundles:
    zero total multidegree and trivial fundamental-cycle products.
    """
    check_prime(q)
    rcs = relative_components(g)
    if set(scalars) != set(rcs):
        raise ValueError("scalars must be given for exactly the relative components")
    for rc in rcs:
        vec = scalars[rc]
        if len(vec) != len(rc.separating_edges):
            raise ValueError(f"{rc} needs {len(rc.separating_edges)} scalars")
        if any(x % q == 0 for x in vec):
            raise ValueError(f"zero scalar at {rc}")
    total = tensor_all((realize(g, rc, scalars[rc], q) for rc in rcs), g, q)
    return is_trivial(total)


def circuit_ratio(g: MultiGraph, scalars: Mapping[RelativeComponent, Sequence[int]], c: Circuit, q: int) -> int:
    """Product of F_u(e)/F_v(e) over the steps u -e-> v of ``c`` (loops skipped)."""
    by_vertex = {}
    for rc, vec in scalars.items():
        for e, s in zip(rc.separating_edges, vec):
            by_vertex[(rc.v, e)] = s
    out = 1
    for e, a, b in c.oriented_steps():
        if a == b:
            continue
        out = out * by_vertex[(a, e)] * inv(by_vertex[(b, e)], q) % q
    return out


def _nonloop_blocks(g: MultiGraph) -> list[frozenset[str]]:
    return [b for b in circuit_partition(g) if not (len(b) == 1 and g.is_loop(next(iter(b))))]


def enumerate_es(g: MultiGraph, q: int) -> list[EnrichedPoint]:
    """All enriched structures on ``g`` over F_q, in a stable order.

    Every class is obtained exactly once from a common value phi(e) per
    edge of each block, with phi = 1 on the block's first edge; the scalar
    vector of (v, G) is phi restricted to its separating edges.
    """
    check_prime(q)
    if not g.is_connected():
        raise GraphError("graph must be connected")
    rcs = relative_components(g)
    blocks = [g.sort_edges(b) for b in _nonloop_blocks(g)]
    choices = []
    for b in blocks:
        choices.append([(1,) + rest for rest in product(units(q), repeat=len(b) - 1)])
    out = []
    for combo in product(*choices):
        phi = {}
        for b, vals in zip(blocks, combo):
            phi.update(zip(b, vals))
        scalars = {rc: normalize_vector([phi[e] for e in rc.separating_edges], q) for rc in rcs}
        out.append(EnrichedPoint(g, q, tuple((rc, scalars[rc]) for rc in rcs)))
    if len(set(out)) != len(out):
        raise AssertionError("duplicate enriched structures in enumeration")
    out.sort(key=EnrichedPoint.sort_key)
    return out


def count_es(g: MultiGraph, q: int) -> int:
    return len(enumerate_es(g, q))


def matched_values(ep: EnrichedPoint) -> dict[str, int]:
    """Common value phi(e) per non-loop edge after rescaling each block to match.

    Within a block the rescaling t is fixed by t = 1 at the block's least
    vertex and t_u F_u(e) = t_v F_v(e) along edges; phi(e) = t_v F_v(e).
    Raises ``ValueError`` if the scalars cannot be matched.
    """
    g, q = ep.graph, ep.q
    F = {}
    for rc, vec in ep.items:
        for e, s in zip(rc.separating_edges, vec):
            F[(rc.v, e)] = s
    phi = {}
    for block in _nonloop_blocks(g):
        vs = g.sort_vertices(block_vertices(g, block))
        t = {vs[0]: 1}
        queue = [vs[0]]
        while queue:
            x = queue.pop(0)
            for e in g.sort_edges(block):
                if x not in g.ends[e]:
                    continue
                y = g.other_end(e, x)
                val = t[x] * F[(x, e)] % q
                ty = val * inv(F[(y, e)], q) % q
                if y not in t:
                    t[y] = ty
                    queue.append(y)
                elif t[y] != ty:
                    raise ValueError("scalars do not match up around a circuit")
        for e in block:
            a, b = g.ends[e]
            phi[e] = t[a] * F[(a, e)] % q
    return phi


def es_at_point(lg: LabeledGraph, p: FieldPoint, q: int) -> list[EnrichedPoint]:
    """Enriched structures on the curve over ``p`` (graph specialised first)."""
    return enumerate_es(specialized_graph(lg, p).graph, q)


def _check_in_chart(lg: LabeledGraph, chart: Contraction, p: FieldPoint) -> None:
    if chart.source != lg.graph:
        raise GraphError("chart contraction must start at the labelled graph")
    needed = {lg.label[e] for e in chart.contracted}
    if not needed <= p.units:
        raise ValueError("point is outside the chart: a contracted edge has a vanishing label")


def point_contraction(lg: LabeledGraph, chart: Contraction, p: FieldPoint) -> Contraction:
    """The contraction from the chart graph to the graph over ``p``."""
    _check_in_chart(lg, chart, p)
    full = specialize(lg, p)
    return chart.then(_relative(chart, full))


def _relative(chart: Contraction, full: Contraction) -> Contraction:
    from .graph import relative_contraction

    return relative_contraction(chart, full)


def gamma_es_at_point(lg: LabeledGraph, chart: Contraction, p: FieldPoint, q: int) -> int:
    """Number of chart-enriched structures at ``p``.

    When the contraction from the chart graph to the graph over ``p`` is
    aligned the chart agrees with the enriched structures at ``p``;
    otherwise the set is empty.
    """
    _check_in_chart(lg, chart, p)
    rel = _relative(chart, specialize(lg, p))
    if is_aligned_contraction(rel):
        return len(es_at_point(lg, p, q))
    return 0


def gamma_es_bruteforce(f: Contraction, q: int) -> int:
    """Direct count of chart-enriched structures on the curve with graph ``f.target``.

    ``f`` runs from the chart graph to the graph of the point.  Relative
    components of the chart with a contracted separating edge pull back to
    the trivial sheaf and contribute the trivial bundle.  The others give a
    scalar vector on their (surviving) separating edges, a multidegree pushed
    forward along ``f``, and the whole tuple must tensor to the trivial bundle.
    """
    check_prime(q)
    src, tgt = f.source, f.target
    live = []
    for rc in relative_components(src):
        if any(e in f.contracted for e in rc.separating_edges):
            continue
        deg = {y: 0 for y in tgt.vertices}
        for x, d in standard_multidegree(src, rc).items():
            deg[f.vertex_map[x]] += d
        w = f.vertex_map[rc.v]
        live.append((rc, w, deg))
    options = []
    for rc, w, deg in live:
        vecs = [(1,) + rest for rest in product(units(q), repeat=len(rc.separating_edges) - 1)]
        bundles = []
        for vec in vecs:
            sc = {}
            for e, s in zip(rc.separating_edges, vec):
                sc[e] = s if tgt.ends[e][0] == w else inv(s, q)
            bundles.append(CombLineBundle(tgt, q, deg, sc))
        options.append(bundles)
    count = 0
    for combo in product(*options):
        if is_trivial(tensor_all(combo, tgt, q)):
            count += 1
    return count


# -- Maino's formulation ----------------------------------------------------


@dataclass(frozen=True)
class MainoStructure:
    """One line bundle per component, with the prescribed restriction degrees
    and trivial tensor product."""

    graph: MultiGraph
    q: int
    bundles: Mapping[str, CombLineBundle]

    def __eq__(self, other):
        if not isinstance(other, MainoStructure):
            return NotImplemented
        return (self.graph, self.q, dict(self.bundles)) == (other.graph, other.q, dict(other.bundles))

    def __hash__(self):
        return hash((self.graph, self.q, tuple(self.bundles.items())))


def maino_degrees(g: MultiGraph, v: str) -> dict[str, int]:
    out = {}
    for x in g.vertices:
        if x == v:
            out[x] = -sum(1 for e in g.non_loop_edges if v in g.ends[e])
        else:
            out[x] = sum(1 for e in g.edges_between([x], [v]))
    return out


def to_maino(ep: EnrichedPoint) -> MainoStructure:
    """F_v = tensor over G in pi0(graph - v) of the dual bundles of (v, G)."""
    g, q = ep.graph, ep.q
    out = {}
    for v in g.vertices:
        duals = [realize(g, rc, vec, q).dual() for rc, vec in ep.items if rc.v == v]
        out[v] = tensor_all(duals, g, q)
    return MainoStructure(g, q, MappingProxyType(out))


def _path_within(g: MultiGraph, vs: frozenset[str], a: str, b: str) -> tuple[list[str], list[str]]:
    prev: dict[str, tuple[str, str] | None] = {a: None}
    queue = [a]
    while queue:
        x = queue.pop(0)
        if x == b:
            break
        for e in g.non_loop_edges:
            if x in g.ends[e]:
                y = g.other_end(e, x)
                if y in vs and y not in prev:
                    prev[y] = (x, e)
                    queue.append(y)
    verts, edges = [b], []
    while prev[verts[-1]] is not None:
        x, e = prev[verts[-1]]
        edges.append(e)
        verts.append(x)
    return verts[::-1], edges[::-1]


def validate_maino(m: MainoStructure) -> None:
    """Raise ``ValueError`` unless ``m`` satisfies the Maino conditions."""
    g, q = m.graph, m.q
    if set(m.bundles) != set(g.vertices):
        raise ValueError("need exactly one bundle per vertex")
    from .graph import enumerate_circuits

    circuits = enumerate_circuits(g)
    for v, F in m.bundles.items():
        if F.graph != g or F.q != q:
            raise ValueError(f"bundle at {v!r} lives on another graph or field")
        if dict(F.multidegree) != maino_degrees(g, v):
            raise ValueError(f"bundle at {v!r} has the wrong multidegree")
        for c in circuits:
            if v not in c.vertices and F.circuit_product(c) != 1:
                raise ValueError(f"bundle at {v!r} is not trivial away from its component")
    if not is_trivial(tensor_all(m.bundles.values(), g, q)):
        raise ValueError("tensor product of the Maino bundles is not trivial")


def from_maino(m: MainoStructure) -> EnrichedPoint:
    """Recover the enriched structure from its Maino bundles.

    For (v, G) with first separating edge e0, the scalar at a separating edge
    e (to x in G) is the product of F_v around v -e0-> x0 ~> x -e-> v.
    """
    validate_maino(m)
    g, q = m.graph, m.q
    scalars = {}
    for rc in relative_components(g):
        F = m.bundles[rc.v]
        e0 = rc.separating_edges[0]
        x0 = g.other_end(e0, rc.v)
        vec = []
        for e in rc.separating_edges:
            if e == e0:
                vec.append(1)
                continue
            x = g.other_end(e, rc.v)
            pv, pe = _path_within(g, rc.G, x0, x)
            c = Circuit(tuple([rc.v] + pv), tuple([e0] + pe + [e]))
            vec.append(F.circuit_product(c))
        scalars[rc] = tuple(vec)
    return EnrichedPoint.from_scalars(g, scalars, q)
