"""Charts of a labelled graph, their loci, glueing loci and emptiness certificates.

A chart is a contraction of the controlling graph.  Its locus consists of
the field points at which every contracted edge has a unit label.  Points
are sampled as subsets of unit labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations

from .enriched import es_at_point, gamma_es_at_point, gamma_es_bruteforce, standard_multidegree
from .graph import (
    Circuit,
    Contraction,
    MultiGraph,
    circuit_partition,
    contract,
    enumerate_circuits,
    relative_components,
    relative_contraction,
)
from .specialization import FieldPoint, LabeledGraph, is_aligned_contraction, specialize


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


@dataclass(frozen=True)
class Chart:
    lg: LabeledGraph
    contraction: Contraction

    @property
    def contracted(self) -> frozenset[str]:
        return self.contraction.contracted

    @property
    def aligned(self) -> bool:
        return is_aligned_contraction(self.contraction)

    @property
    def name(self) -> str:
        return "{" + ",".join(self.lg.graph.sort_edges(self.contracted)) + "}"

    def contains(self, p: FieldPoint) -> bool:
        return {self.lg.label[e] for e in self.contracted} <= p.units


def _as_labeled(g: LabeledGraph | MultiGraph) -> LabeledGraph:
    return g if isinstance(g, LabeledGraph) else LabeledGraph.distinct(g)


def enumerate_charts(g: LabeledGraph | MultiGraph) -> list[Chart]:
    """One chart per edge subset, ordered by size and then by edge order."""
    lg = _as_labeled(g)
    return [Chart(lg, contract(lg.graph, S)) for S in _subsets(lg.graph.edges)]


def sample_points(lg: LabeledGraph) -> list[FieldPoint]:
    """Every subset of the labels as a unit set."""
    return [FieldPoint(S) for S in _subsets(lg.labels)]


# -- emptiness certificate --------------------------------------------------


@dataclass(frozen=True)
class EmptinessCertificate:
    """Degree bookkeeping at the target vertex ``v`` with fibre ``V``.

    ``lhs`` counts edges from V to its complement and ``rhs`` the edges from
    some w in V to a component of (source - w) missing V.  ``inner_degree`` and
    ``outer_degree`` are the degrees at v summed over relative components rooted
    inside and outside V respectively, computed from the standard
    multidegrees (components with a contracted separating edge count as
    trivial).  The predicted values are ``rhs`` and ``-lhs``.
    """

    v: str
    V: frozenset[str]
    lhs: int
    rhs: int
    inner_degree: int
    outer_degree: int
    circuit: Circuit
    e: str
    e_prime: str

    @property
    def valid(self) -> bool:
        return self.lhs > self.rhs

    @property
    def inner_matches(self) -> bool:
        return self.inner_degree == self.rhs

    @property
    def outer_matches(self) -> bool:
        return self.outer_degree == -self.lhs

    @property
    def degree_obstruction(self) -> bool:
        """True when the degree at v of the tensor product is forced to be nonzero."""
        return self.inner_degree + self.outer_degree != 0


def _degree_at(f: Contraction, v: str, w: str) -> int:
    """Sum over relative components rooted at ``w`` of their degree at target vertex ``v``."""
    src = f.source
    total = 0
    for rc in relative_components(src):
        if rc.v != w or any(e in f.contracted for e in rc.separating_edges):
            continue
        deg = standard_multidegree(src, rc)
        total += sum(d for x, d in deg.items() if f.vertex_map[x] == v)
    return total


def emptiness_certificate(f: Contraction, v: str) -> EmptinessCertificate | None:
    """Certificate at ``v`` when ``f`` fails to be aligned through the fibre of ``v``.

    Looks for a circuit class of the source with a non-loop edge e
    contracted into v and an edge e' of the same class leaving the fibre V,
    together with a circuit through both.  Returns None when there is none.
    """
    src = f.source
    V = f.fiber(v)
    witness = None
    circuits = enumerate_circuits(src)
    for block in circuit_partition(src):
        inner = [e for e in src.sort_edges(block) if e in f.contracted and not src.is_loop(e) and f.edge_map[e] == v]
        leaving = [e for e in src.sort_edges(block) if len(set(src.ends[e]) & V) == 1]
        if not inner or not leaving:
            continue
        for e in inner:
            for e2 in leaving:
                c = next((c for c in circuits if e in c.edge_set and e2 in c.edge_set), None)
                if c is not None:
                    witness = (c, e, e2)
                    break
            if witness:
                break
        if witness:
            break
    if witness is None:
        return None
    lhs = sum(1 for e in src.non_loop_edges if len(set(src.ends[e]) & V) == 1)
    rhs = 0
    for rc in relative_components(src):
        if rc.v in V and not (rc.G & V):
            rhs += len(rc.separating_edges)
    inner_degree = sum(_degree_at(f, v, w) for w in src.vertices if w in V)
    outer_degree = sum(_degree_at(f, v, w) for w in src.vertices if w not in V)
    c, e, e2 = witness
    return EmptinessCertificate(v, V, lhs, rhs, inner_degree, outer_degree, c, e, e2)


def emptiness_certificates(f: Contraction) -> list[EmptinessCertificate]:
    out = []
    for v in f.target.vertices:
        cert = emptiness_certificate(f, v)
        if cert is not None:
            out.append(cert)
    return out


# -- glueing ----------------------------------------------------------------


@lru_cache(maxsize=4096)
def _glue_search(lg: LabeledGraph, s1: frozenset[str], s2: frozenset[str], unit_edges: frozenset[str]) -> frozenset[str] | None:
    g = lg.graph
    f1, f2 = contract(g, s1), contract(g, s2)
    base = s1 | s2
    free = g.sort_edges(unit_edges - base)
    for extra in _subsets(free):
        T = base | frozenset(extra)
        ft = contract(g, T)
        if is_aligned_contraction(relative_contraction(f1, ft)) and is_aligned_contraction(relative_contraction(f2, ft)):
            return T
    return None


def glueing_witness(c1: Chart, c2: Chart, p: FieldPoint) -> frozenset[str] | None:
    """Contracted set of an intermediate graph through which both charts glue at ``p``, if any."""
    if c1.lg != c2.lg:
        raise ValueError("charts belong to different labelled graphs")
    if not (c1.contains(p) and c2.contains(p)):
        raise ValueError("point lies outside a chart locus")
    lg = c1.lg
    specialize(lg, p)  # validates the labels of p
    unit_edges = lg.edges_with_labels(p.units)
    return _glue_search(lg, c1.contracted, c2.contracted, unit_edges)


def in_glueing_locus(c1: Chart, c2: Chart, p: FieldPoint) -> bool:
    return glueing_witness(c1, c2, p) is not None


# -- report -----------------------------------------------------------------


@dataclass(frozen=True)
class AtlasCell:
    in_locus: bool
    aligned: bool | None = None
    count: int | None = None
    bruteforce: int | None = None
    glues: bool | None = None
    certificates: tuple[EmptinessCertificate, ...] = ()


@dataclass
class AtlasReport:
    lg: LabeledGraph
    q: int
    charts: list[Chart]
    points: list[FieldPoint]
    cells: dict[tuple[int, int], AtlasCell]
    es_counts: list[int]
    issues: list[str] = field(default_factory=list)


def atlas_report(lg: LabeledGraph, q: int, bruteforce: bool = True) -> AtlasReport:
    """Chart-by-point table of chart-enriched counts with alignment and glueing flags.

    ``glues`` records whether the chart glues at the point with the chart
    contracting exactly the unit edges.  ``issues`` collects every
    disagreement found by the cross-checks.
    """
    charts = enumerate_charts(lg)
    points = sample_points(lg)
    by_set = {c.contracted: c for c in charts}
    es_counts = [len(es_at_point(lg, p, q)) for p in points]
    cells, issues = {}, []
    for j, p in enumerate(points):
        own = by_set[lg.edges_with_labels(p.units)]
        for i, c in enumerate(charts):
            if not c.contains(p):
                cells[(i, j)] = AtlasCell(False)
                continue
            rel = relative_contraction(c.contraction, specialize(lg, p))
            aligned = is_aligned_contraction(rel)
            count = gamma_es_at_point(lg, c.contraction, p, q)
            brute = gamma_es_bruteforce(rel, q) if bruteforce else None
            glues = in_glueing_locus(c, own, p)
            certs = () if aligned else tuple(emptiness_certificates(rel))
            if brute is not None and brute != count:
                issues.append(f"chart {c.name} at {p}: dispatch count {count} but direct count {brute}")
            if aligned and count != es_counts[j]:
                issues.append(f"chart {c.name} at {p}: aligned chart disagrees with the point")
            if not aligned and not any(x.valid for x in certs):
                issues.append(f"chart {c.name} at {p}: no valid emptiness certificate")
            if not glues and count and es_counts[j]:
                issues.append(f"chart {c.name} at {p}: outside the glueing locus but both sides are nonempty")
            cells[(i, j)] = AtlasCell(True, aligned, count, brute, glues, certs)
    return AtlasReport(lg, q, charts, points, cells, es_counts, issues)
