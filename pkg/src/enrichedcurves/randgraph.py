"""Seeded random connected multigraphs for property checks."""

from __future__ import annotations

import random

from .graph import MultiGraph


def random_connected_multigraph(
    rng: random.Random,
    max_vertices: int = 5,
    max_edges: int = 8,
    loops: bool = True,
    min_vertices: int = 1,
) -> MultiGraph:
    """A random spanning tree plus random extra edges (parallels and loops allowed)."""
    n = rng.randint(min_vertices, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    ends = []
    for i in range(1, n):
        ends.append((vs[rng.randrange(i)], vs[i]))
    extra = rng.randint(0, max(0, max_edges - len(ends)))
    for _ in range(extra):
        u, v = rng.choice(vs), rng.choice(vs)
        if u == v and not loops:
            continue
        ends.append((u, v))
    rng.shuffle(ends)
    return MultiGraph(vs, [(f"e{i}", u, v) for i, (u, v) in enumerate(ends)])


def random_graphs(seed: int, count: int, **kw) -> list[MultiGraph]:
    rng = random.Random(seed)
    return [random_connected_multigraph(rng, **kw) for _ in range(count)]
