"""Finite multigraphs with loops: circuits, circuit-connected blocks,
relative components, hemispheres and edge contractions.

Vertices and edges are opaque string ids.  Every ordering in this module
follows declaration order, so all outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph arguments."""


class MultiGraph:
    """An undirected multigraph; loops and parallel edges are allowed."""

    __slots__ = ("vertices", "edges", "ends", "_vidx", "_eidx", "_hash")

    def __init__(self, vertices: Iterable[str], ends: Mapping[str, tuple[str, str]] | Iterable[tuple[str, str, str]]):
        vertices = tuple(vertices)
        if isinstance(ends, Mapping):
            items = [(e, uv[0], uv[1]) for e, uv in ends.items()]
        else:
            items = [tuple(t) for t in ends]
        if len(set(vertices)) != len(vertices):
            raise GraphError("duplicate vertex id")
        vset = set(vertices)
        edges = tuple(t[0] for t in items)
        if len(set(edges)) != len(edges):
            raise GraphError("duplicate edge id")
        for e, u, v in items:
            if u not in vset or v not in vset:
                raise GraphError(f"edge {e!r} has an endpoint that is not a vertex")
        self.vertices = vertices
        self.edges = edges
        self.ends = MappingProxyType({e: (u, v) for e, u, v in items})
        self._vidx = {v: i for i, v in enumerate(vertices)}
        self._eidx = {e: i for i, e in enumerate(edges)}
        self._hash = None

    # -- basic structure ---------------------------------------------------

    def __repr__(self):
        inner = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in self.ends.items())
        return f"MultiGraph(V={list(self.vertices)}, E=[{inner}])"

    def __reduce__(self):
        return (MultiGraph, (self.vertices, [(e, u, v) for e, (u, v) in self.ends.items()]))

    def _key(self):
        return (frozenset(self.vertices), frozenset((e, frozenset(uv)) for e, uv in self.ends.items()))

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def vertex_index(self, v: str) -> int:
        return self._vidx[v]

    def edge_index(self, e: str) -> int:
        return self._eidx[e]

    def sort_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self._vidx.__getitem__))

    def sort_edges(self, es: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(es, key=self._eidx.__getitem__))

    def is_loop(self, e: str) -> bool:
        u, v = self.ends[e]
        return u == v

    def other_end(self, e: str, x: str) -> str:
        u, v = self.ends[e]
        if x == u:
            return v
        if x == v:
            return u
        raise GraphError(f"vertex {x!r} is not an end of {e!r}")

    @property
    def loops(self) -> tuple[str, ...]:
        return tuple(e for e in self.edges if self.is_loop(e))

    @property
    def non_loop_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.edges if not self.is_loop(e))

    def incident(self, x: str) -> tuple[str, ...]:
        return tuple(e for e in self.edges if x in self.ends[e])

    def edges_between(self, a: Iterable[str], b: Iterable[str]) -> tuple[str, ...]:
        """Edges with one end in ``a`` and the other in ``b`` (disjoint sets)."""
        a, b = set(a), set(b)
        out = []
        for e in self.edges:
            u, v = self.ends[e]
            if (u in a and v in b) or (u in b and v in a):
                out.append(e)
        return tuple(out)

    def boundary(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Edges with exactly one end in ``vs``."""
        vs = set(vs)
        return tuple(e for e in self.edges if (self.ends[e][0] in vs) != (self.ends[e][1] in vs))

    def adjacency(self, removed: Iterable[str] = ()) -> dict[str, list[str]]:
        removed = set(removed)
        adj = {v: [] for v in self.vertices if v not in removed}
        for e in self.edges:
            u, v = self.ends[e]
            if u in adj and v in adj and u != v:
                adj[u].append(v)
                adj[v].append(u)
        return adj

    def induced_connected(self, vs: Iterable[str]) -> bool:
        """Whether the subgraph induced on ``vs`` is nonempty and connected."""
        vs = set(vs)
        if not vs:
            return False
        removed = set(self.vertices) - vs
        return len(_components(self.adjacency(removed), self.sort_vertices(vs))) == 1

    def is_connected(self) -> bool:
        # the empty graph is not connected
        return self.induced_connected(self.vertices)


def _components(adj: dict[str, list[str]], order: Iterable[str]) -> list[tuple[str, ...]]:
    seen: set[str] = set()
    blocks = []
    for s in order:
        if s in seen:
            continue
        seen.add(s)
        stack, block = [s], [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
                    block.append(y)
        blocks.append(block)
    return blocks


def connected_components(g: MultiGraph, removed: Iterable[str] = ()) -> list[frozenset[str]]:
    """Vertex partition into maximal connected sets, ignoring ``removed`` vertices.

    Blocks are ordered by their least vertex.
    """
    removed = set(removed)
    order = [v for v in g.vertices if v not in removed]
    return [frozenset(b) for b in _components(g.adjacency(removed), order)]


def _require_connected(g: MultiGraph) -> None:
    if not g.is_connected():
        raise GraphError("graph must be connected")


# -- circuits ---------------------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A closed trail repeating no edge and no vertex other than its start.

    ``vertices[i]`` and ``vertices[i+1]`` (cyclically) are the ends of
    ``edges[i]``; ``len(vertices) == len(edges)``.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def __len__(self):
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[str]:
        return frozenset(self.edges)

    def oriented_steps(self):
        """Yield ``(edge, from_vertex, to_vertex)`` along the traversal."""
        n = len(self.edges)
        for i, e in enumerate(self.edges):
            yield e, self.vertices[i], self.vertices[(i + 1) % n]

    def is_valid_in(self, g: MultiGraph) -> bool:
        n = len(self.edges)
        if n == 0 or len(self.vertices) != n:
            return False
        if len(set(self.edges)) != n or len(set(self.vertices)) != n:
            return False
        for e, a, b in self.oriented_steps():
            if e not in g.ends or set(g.ends[e]) != {a, b}:
                return False
        return True


def _canonical_circuit(g: MultiGraph, vs: list[str], es: list[str]) -> Circuit:
    # rotate to the least vertex, then pick the direction with the smaller first edge
    n = len(es)
    i = min(range(n), key=lambda k: g.vertex_index(vs[k]))
    fwd_v = vs[i:] + vs[:i]
    fwd_e = es[i:] + es[:i]
    if n > 1:
        # reversed traversal starting at the same vertex
        rev_v = [fwd_v[0]] + fwd_v[1:][::-1]
        rev_e = fwd_e[::-1]
        if g.edge_index(rev_e[0]) < g.edge_index(fwd_e[0]):
            fwd_v, fwd_e = rev_v, rev_e
    return Circuit(tuple(fwd_v), tuple(fwd_e))


def enumerate_circuits(g: MultiGraph) -> list[Circuit]:
    """All circuits of ``g`` up to rotation and reflection, loops included.

    Exhaustive simple-cycle search; each cycle is reported once in a
    canonical traversal, ordered by (length, edge indices).
    """
    found: dict[frozenset[str], Circuit] = {}
    for e in g.loops:
        v = g.ends[e][0]
        found[frozenset([e])] = Circuit((v,), (e,))
    inc = {v: [e for e in g.non_loop_edges if v in g.ends[e]] for v in g.vertices}

    for s in g.vertices:
        si = g.vertex_index(s)
        # only vertices with index >= s so every cycle is rooted at its least vertex
        path_v, path_e, used_v = [s], [], {s}

        def extend(x):
            for e in inc[x]:
                if path_e and e == path_e[-1]:
                    continue
                y = g.other_end(e, x)
                if y == s and path_e:
                    if e in path_e:
                        continue
                    key = frozenset(path_e + [e])
                    if key not in found:
                        found[key] = _canonical_circuit(g, list(path_v), path_e + [e])
                    continue
                if y in used_v or g.vertex_index(y) < si:
                    continue
                used_v.add(y)
                path_v.append(y)
                path_e.append(e)
                extend(y)
                path_e.pop()
                path_v.pop()
                used_v.discard(y)

        extend(s)
    circuits = list(found.values())
    circuits.sort(key=lambda c: (len(c), sorted(g.edge_index(e) for e in c.edges)))
    return circuits


# -- circuit-connected partition --------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _blocks_from_uf(g: MultiGraph, uf: _UnionFind) -> list[frozenset[str]]:
    groups: dict[str, list[str]] = {}
    for e in g.edges:
        groups.setdefault(uf.find(e), []).append(e)
    blocks = [frozenset(b) for b in groups.values()]
    blocks.sort(key=lambda b: min(g.edge_index(e) for e in b))
    return blocks


def _partition_by_circuits(g: MultiGraph) -> list[frozenset[str]]:
    uf = _UnionFind(g.edges)
    for c in enumerate_circuits(g):
        first = c.edges[0]
        for e in c.edges[1:]:
            uf.union(first, e)
    return _blocks_from_uf(g, uf)


def _partition_by_biconnectivity(g: MultiGraph) -> list[frozenset[str]]:
    # Hopcroft-Tarjan with an edge stack; the parent edge (not the parent
    # vertex) is skipped so parallel edges close cycles.
    uf = _UnionFind(g.edges)
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    stack: list[str] = []
    counter = [0]
    inc = {v: [e for e in g.non_loop_edges if v in g.ends[e]] for v in g.vertices}

    def dfs(x, parent_edge):
        disc[x] = low[x] = counter[0]
        counter[0] += 1
        for e in inc[x]:
            if e == parent_edge:
                continue
            y = g.other_end(e, x)
            if y not in disc:
                stack.append(e)
                dfs(y, e)
                low[x] = min(low[x], low[y])
                if low[y] >= disc[x]:
                    block = []
                    while True:
                        f = stack.pop()
                        block.append(f)
                        if f == e:
                            break
                    for f in block[1:]:
                        uf.union(block[0], f)
            elif disc[y] < disc[x]:
                stack.append(e)
                low[x] = min(low[x], disc[y])

    for v in g.vertices:
        if v not in disc:
            dfs(v, None)
    return _blocks_from_uf(g, uf)


def circuit_partition(g: MultiGraph, method: str = "circuits") -> list[frozenset[str]]:
    """Maximal circuit-connected edge sets.

    ``method="circuits"`` merges edges lying on a common enumerated circuit;
    ``method="blocks"`` uses loops plus 2-vertex-connected blocks.  Bridges
    and loops each form a singleton block.  Blocks are ordered by least edge.
    """
    if method == "circuits":
        return _partition_by_circuits(g)
    if method == "blocks":
        return _partition_by_biconnectivity(g)
    raise ValueError(f"unknown method {method!r}")


def block_vertices(g: MultiGraph, block: Iterable[str]) -> frozenset[str]:
    return frozenset(x for e in block for x in g.ends[e])


# -- relative components and hemispheres ------------------------------------


@dataclass(frozen=True)
class RelativeComponent:
    """A vertex ``v`` together with a connected component ``G`` of the graph minus ``v``."""

    v: str
    G: frozenset[str]
    separating_edges: tuple[str, ...] = field(compare=False)

    def __repr__(self):
        return f"({self.v}, {{{', '.join(sorted(self.G))}}})"


@dataclass(frozen=True)
class Hemisphere:
    """A connected vertex set whose complement is connected and nonempty."""

    G: frozenset[str]
    separating_edges: tuple[str, ...] = field(compare=False)

    def __repr__(self):
        return "{" + ", ".join(sorted(self.G)) + "}"


def relative_components(g: MultiGraph) -> list[RelativeComponent]:
    """All pairs (v, G), ordered by v and then by the least vertex of G."""
    _require_connected(g)
    out = []
    for v in g.vertices:
        for comp in connected_components(g, removed=[v]):
            sep = g.edges_between([v], comp)
            out.append(RelativeComponent(v, comp, sep))
    return out


def hemispheres(g: MultiGraph) -> list[Hemisphere]:
    """All hemispheres, ordered by size and then lexicographically by vertex index."""
    _require_connected(g)
    vs = g.vertices
    out = []
    for k in range(1, len(vs)):
        for sub in combinations(vs, k):
            rest = [x for x in vs if x not in sub]
            if g.induced_connected(sub) and g.induced_connected(rest):
                G = frozenset(sub)
                out.append(Hemisphere(G, g.boundary(G)))
    return out


# -- contractions -----------------------------------------------------------


@dataclass(frozen=True)
class Contraction:
    """A graph morphism contracting ``contracted`` and keeping all other edges.

    ``edge_map`` sends a kept edge to itself (same id in the target) and a
    contracted edge to the target vertex it collapses into.
    """

    source: MultiGraph
    target: MultiGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    contracted: frozenset[str]

    def __hash__(self):
        return hash((self.source, self.contracted))

    def __eq__(self, other):
        if not isinstance(other, Contraction):
            return NotImplemented
        return (self.source, self.target, dict(self.vertex_map), dict(self.edge_map)) == (
            other.source,
            other.target,
            dict(other.vertex_map),
            dict(other.edge_map),
        )

    def fiber(self, w: str) -> frozenset[str]:
        return frozenset(v for v, x in self.vertex_map.items() if x == w)

    def image(self, vs: Iterable[str]) -> frozenset[str]:
        return frozenset(self.vertex_map[v] for v in vs)

    def is_valid(self) -> bool:
        src, tgt = self.source, self.target
        if set(self.vertex_map) != set(src.vertices) or set(self.vertex_map.values()) - set(tgt.vertices):
            return False
        for e in src.edges:
            u, v = src.ends[e]
            fu, fv = self.vertex_map[u], self.vertex_map[v]
            if e in self.contracted:
                if fu != fv or self.edge_map[e] != fu:
                    return False
            else:
                t = self.edge_map[e]
                if t not in tgt.ends or {fu, fv} != set(tgt.ends[t]):
                    return False
        kept = [self.edge_map[e] for e in src.edges if e not in self.contracted]
        return sorted(kept) == sorted(tgt.edges)

    def then(self, other: "Contraction") -> "Contraction":
        """Composite ``other ∘ self``."""
        if other.source != self.target:
            raise GraphError("contractions are not composable")
        vmap = {v: other.vertex_map[w] for v, w in self.vertex_map.items()}
        emap = {}
        for e, t in self.edge_map.items():
            if e in self.contracted:
                emap[e] = other.vertex_map[t]
            else:
                emap[e] = other.edge_map[t]
        contracted = self.contracted | frozenset(e for e in self.source.edges if e not in self.contracted and self.edge_map[e] in other.contracted)
        return Contraction(self.source, other.target, MappingProxyType(vmap), MappingProxyType(emap), contracted)


def contract(g: MultiGraph, S: Iterable[str]) -> Contraction:
    """Quotient of ``g`` by the edge set ``S``.

    Each merged vertex class is named after its least vertex; kept edges keep
    their ids.  Contracted loops vanish into their vertex.
    """
    S = frozenset(S)
    unknown = S - set(g.edges)
    if unknown:
        raise GraphError(f"unknown edge id(s): {sorted(unknown)}")
    uf = _UnionFind(g.vertices)
    for e in S:
        u, v = g.ends[e]
        uf.union(u, v)
    rep: dict[str, str] = {}
    for v in g.vertices:  # declaration order: the first member of a class is its least vertex
        rep.setdefault(uf.find(v), v)
    vmap = {v: rep[uf.find(v)] for v in g.vertices}
    tverts = [v for v in g.vertices if vmap[v] == v]
    tends = [(e, vmap[g.ends[e][0]], vmap[g.ends[e][1]]) for e in g.edges if e not in S]
    target = MultiGraph(tverts, tends)
    emap = {e: (vmap[g.ends[e][0]] if e in S else e) for e in g.edges}
    return Contraction(g, target, MappingProxyType(vmap), MappingProxyType(emap), S)


def identity_contraction(g: MultiGraph) -> Contraction:
    return contract(g, ())


def relative_contraction(f1: Contraction, f2: Contraction) -> Contraction:
    """The contraction ``f1.target -> f2.target`` when f2 factors through f1."""
    if f1.source != f2.source or not f1.contracted <= f2.contracted:
        raise GraphError("second contraction does not factor through the first")
    h = contract(f1.target, [f1.edge_map[e] for e in f2.contracted - f1.contracted])
    # vertex names agree because both use least-representative naming
    return h


def standard_graphs() -> dict[str, MultiGraph]:
    """Small named graphs used throughout the docs and tests."""
    return {
        "point": MultiGraph(["u"], {}),
        "loop": MultiGraph(["u"], {"l": ("u", "u")}),
        "path": MultiGraph(["u", "v"], {"e": ("u", "v")}),
        "2-gon": MultiGraph(["u", "v"], {"e1": ("u", "v"), "e2": ("u", "v")}),
        "triangle": MultiGraph(["u", "v", "w"], {"a": ("u", "v"), "b": ("v", "w"), "c": ("w", "u")}),
        "square": MultiGraph(
            ["u", "v", "w", "z"], {"a": ("u", "v"), "b": ("v", "w"), "c": ("w", "z"), "d": ("z", "u")}
        ),
    }
