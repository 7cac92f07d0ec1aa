"""Combinatorial line bundles on a nodal curve over F_q.

A bundle is a multidegree on the dual graph together with a gluing scalar
at every non-loop node.  The scalar of edge ``e`` is stored for the
orientation ``ends[e][0] -> ends[e][1]``; the reversed orientation carries
the inverse.  Rescaling the trivialisation on the component ``x`` by ``t``
multiplies scalars on edges leaving ``x`` by ``t`` and on edges entering
``x`` by ``1/t``.  Bundles are compared through a canonical form in which
every edge of a fixed spanning forest has scalar 1.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Mapping

from .ffield import check_prime, inv
from .graph import Circuit, GraphError, MultiGraph


def spanning_forest(g: MultiGraph) -> tuple[dict[str, str | None], list[str]]:
    """BFS forest in declaration order.

    Returns the parent edge of every vertex (None at roots) and the BFS order.
    """
    parent: dict[str, str | None] = {}
    order: list[str] = []
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = [root]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for e in g.non_loop_edges:
                if x in g.ends[e]:
                    y = g.other_end(e, x)
                    if y not in parent:
                        parent[y] = e
                        queue.append(y)
    return parent, order


def oriented(g: MultiGraph, scalars: Mapping[str, int], e: str, frm: str, q: int) -> int:
    """Scalar of ``e`` traversed starting at ``frm``."""
    s = scalars[e]
    return s if g.ends[e][0] == frm else inv(s, q)


class CombLineBundle:
    """Multidegree plus node gluing scalars, modulo per-component rescaling."""

    __slots__ = ("graph", "q", "multidegree", "scalars")

    def __init__(self, graph: MultiGraph, q: int, multidegree: Mapping[str, int], scalars: Mapping[str, int]):
        check_prime(q)
        if set(multidegree) - set(graph.vertices):
            raise GraphError("multidegree on unknown vertex")
        deg = {v: int(multidegree.get(v, 0)) for v in graph.vertices}
        raw = {}
        for e in graph.non_loop_edges:
            s = scalars.get(e, 1) % q
            if s == 0:
                raise ValueError(f"gluing scalar at {e!r} must be nonzero")
            raw[e] = s
        self.graph = graph
        self.q = q
        self.multidegree = MappingProxyType(deg)
        self.scalars = MappingProxyType(self._canonical(raw))

    def _canonical(self, raw: dict[str, int]) -> dict[str, int]:
        g, q = self.graph, self.q
        parent, order = spanning_forest(g)
        # potential t_x so that every forest edge becomes 1
        t: dict[str, int] = {}
        for x in order:
            pe = parent[x]
            if pe is None:
                t[x] = 1
                continue
            y = g.other_end(pe, x)
            # scalar for y -> x times t_y / t_x must be 1
            t[x] = (oriented(g, raw, pe, y, q) * t[y]) % q
        out = {}
        for e, s in raw.items():
            a, b = g.ends[e]
            out[e] = (s * t[a] * inv(t[b], q)) % q
        return out

    @classmethod
    def trivial(cls, graph: MultiGraph, q: int) -> "CombLineBundle":
        return cls(graph, q, {}, {})

    def __eq__(self, other):
        if not isinstance(other, CombLineBundle):
            return NotImplemented
        return (self.graph, self.q, dict(self.multidegree), dict(self.scalars)) == (
            other.graph,
            other.q,
            dict(other.multidegree),
            dict(other.scalars),
        )

    def __hash__(self):
        return hash((self.graph, self.q, tuple(self.multidegree.items()), tuple(self.scalars.items())))

    def __repr__(self):
        return f"CombLineBundle(deg={dict(self.multidegree)}, scalars={dict(self.scalars)}, q={self.q})"

    def _check_same(self, other: "CombLineBundle") -> None:
        if self.graph != other.graph or self.q != other.q:
            raise GraphError("bundles live on different graphs or fields")

    def tensor(self, other: "CombLineBundle") -> "CombLineBundle":
        self._check_same(other)
        deg = {v: self.multidegree[v] + other.multidegree[v] for v in self.graph.vertices}
        sc = {e: (self.scalars[e] * other.scalars[e]) % self.q for e in self.scalars}
        return CombLineBundle(self.graph, self.q, deg, sc)

    __mul__ = tensor

    def dual(self) -> "CombLineBundle":
        deg = {v: -d for v, d in self.multidegree.items()}
        sc = {e: inv(s, self.q) for e, s in self.scalars.items()}
        return CombLineBundle(self.graph, self.q, deg, sc)

    def rescaled(self, t: Mapping[str, int]) -> "CombLineBundle":
        """The same class written in another trivialisation (for testing invariance)."""
        q = self.q
        sc = {}
        for e, s in self.scalars.items():
            a, b = self.graph.ends[e]
            sc[e] = (s * t.get(a, 1) * inv(t.get(b, 1), q)) % q
        return CombLineBundle(self.graph, q, self.multidegree, sc)

    def circuit_product(self, c: Circuit) -> int:
        """Product of oriented scalars along ``c``; loops contribute 1."""
        out = 1
        for e, a, _b in c.oriented_steps():
            if self.graph.is_loop(e):
                continue
            out = (out * oriented(self.graph, self.scalars, e, a, self.q)) % self.q
        return out

    def degree_on(self, vs) -> int:
        return sum(self.multidegree[v] for v in vs)

    @property
    def total_degree(self) -> int:
        return sum(self.multidegree.values())


def tensor_all(bundles, graph: MultiGraph, q: int) -> CombLineBundle:
    out = CombLineBundle.trivial(graph, q)
    for b in bundles:
        out = out.tensor(b)
    return out


def is_trivial(L: CombLineBundle) -> bool:
    """Multidegree zero and every fundamental-cycle product equal to 1.

    In canonical form the fundamental cycle of a non-forest edge has product
    equal to that edge's stored scalar.
    """
    if any(L.multidegree.values()):
        return False
    return all(s == 1 for s in L.scalars.values())
