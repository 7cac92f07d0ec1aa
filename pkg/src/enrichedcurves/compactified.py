"""Compactified enriched structures over F_q-points.

At a field point where every label vanishes, the torsion-free quotient for
a hemisphere H is recorded by the projective vector of its values on the
separating edges of H; its kernel is the hyperplane orthogonal to that
vector.  A datum is compatible when, for every nonempty edge set A, the
kernels of the hemispheres cut out inside A do not span all of F_q^A.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .enriched import EnrichedPoint, matched_values
from .ffield import ProjPoint, Subspace, check_prime, enumerate_proj, hyperplane_kernel, subspace_sum
from .graph import GraphError, Hemisphere, MultiGraph, circuit_partition, hemispheres, relative_components
from .specialization import FieldPoint, LabeledGraph, specialized_graph


@dataclass(frozen=True)
class HemisphereData:
    """One normalized projective vector per hemisphere, in ``hemispheres`` order."""

    graph: MultiGraph
    q: int
    items: tuple[tuple[Hemisphere, ProjPoint], ...]

    @classmethod
    def from_mapping(cls, g: MultiGraph, data: Mapping[Hemisphere | frozenset, Sequence[int] | ProjPoint], q: int) -> "HemisphereData":
        check_prime(q)
        by_set = {(k.G if isinstance(k, Hemisphere) else frozenset(k)): v for k, v in data.items()}
        items = []
        for H in hemispheres(g):
            if H.G not in by_set:
                raise ValueError(f"no datum for hemisphere {H}")
            val = by_set.pop(H.G)
            coords = val.coords if isinstance(val, ProjPoint) else val
            if len(coords) != len(H.separating_edges):
                raise ValueError(f"hemisphere {H} needs {len(H.separating_edges)} coordinates")
            items.append((H, ProjPoint.normalize(coords, q)))
        if by_set:
            raise ValueError(f"data for non-hemisphere vertex sets: {sorted(map(sorted, by_set))}")
        return cls(g, q, tuple(items))

    def as_dict(self) -> dict[frozenset[str], ProjPoint]:
        return {H.G: p for H, p in self.items}

    def point(self, G: Iterable[str]) -> ProjPoint:
        return self.as_dict()[frozenset(G)]

    def sort_key(self):
        return tuple(p.coords for _, p in self.items)

    def describe(self) -> str:
        if not self.items:
            return "(empty)"
        return " ".join(f"{H}:{p!r}" for H, p in self.items)


@dataclass(frozen=True)
class CompatibilityEntry:
    edges: tuple[str, ...]
    kernel_sum: Subspace
    codim: int

    @property
    def passed(self) -> bool:
        return self.codim >= 1


@dataclass(frozen=True)
class CompatibilityReport:
    mode: str
    entries: tuple[CompatibilityEntry, ...]

    @property
    def passed(self) -> bool:
        return all(x.passed for x in self.entries)

    @property
    def failures(self) -> tuple[CompatibilityEntry, ...]:
        return tuple(x for x in self.entries if not x.passed)

    def __bool__(self):
        return self.passed


@lru_cache(maxsize=None)
def _kernel(p: ProjPoint) -> Subspace:
    return hyperplane_kernel(p)


def _kernel_sum(items, A: tuple[str, ...], q: int) -> Subspace:
    pos = {e: i for i, e in enumerate(A)}
    Aset = set(A)
    subs, incs = [], []
    for H, p in items:
        if set(H.separating_edges) <= Aset:
            subs.append(_kernel(p))
            incs.append([pos[e] for e in H.separating_edges])
    return subspace_sum(subs, incs, len(A), q)


def _entry(items, A, q) -> CompatibilityEntry:
    s = _kernel_sum(items, A, q)
    return CompatibilityEntry(A, s, s.quotient_dim())


def _nonempty_subsets(edges: Sequence[str]):
    for k in range(1, len(edges) + 1):
        yield from combinations(edges, k)


def edge_classes(g: MultiGraph) -> list[tuple[str, ...]]:
    """Circuit-connected classes other than single loops, edges in declaration order."""
    out = []
    for b in circuit_partition(g):
        if len(b) == 1 and g.is_loop(next(iter(b))):
            continue
        out.append(g.sort_edges(b))
    return out


def is_compatible(hd: HemisphereData, mode: str = "full") -> CompatibilityReport:
    """Compatibility of ``hd``.

    ``mode="full"`` tests every nonempty subset A of the edges.
    ``mode="classes"`` tests only subsets of a single circuit-connected
    class; the separating edges of a hemisphere always lie in one class, so
    the kernel sum over any A splits as a direct sum over the classes.
    """
    g, q = hd.graph, hd.q
    if mode == "full":
        subsets = _nonempty_subsets(g.edges)
    elif mode == "classes":
        subsets = (A for C in edge_classes(g) for A in _nonempty_subsets(C))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CompatibilityReport(mode, tuple(_entry(hd.items, A, q) for A in subsets))


def passes(hd: HemisphereData, mode: str = "full") -> bool:
    """``is_compatible(hd, mode).passed`` without building the report; stops at the first failure."""
    g = hd.graph
    subsets = _nonempty_subsets(g.edges) if mode == "full" else (A for C in edge_classes(g) for A in _nonempty_subsets(C))
    return all(_kernel_sum(hd.items, A, hd.q).codim >= 1 for A in subsets)


def is_invertible(hd: HemisphereData) -> bool:
    return all(p.is_invertible() for _, p in hd.items)


def ces_to_es(hd: HemisphereData) -> EnrichedPoint:
    """The enriched structure read off the hemispheres G coming from relative components (v, G)."""
    if not is_invertible(hd):
        raise ValueError("hemisphere datum is not invertible")
    if not is_compatible(hd, mode="classes").passed:
        raise ValueError("hemisphere datum is not compatible")
    g = hd.graph
    data = hd.as_dict()
    scalars = {}
    for rc in relative_components(g):
        # the separating edges of (v, G) are exactly the edges leaving G
        scalars[rc] = data[rc.G].coords
    return EnrichedPoint.from_scalars(g, scalars, hd.q)


def es_to_ces(ep: EnrichedPoint) -> HemisphereData:
    """Extend an enriched structure to all hemispheres via the matched edge values."""
    phi = matched_values(ep)
    items = []
    for H in hemispheres(ep.graph):
        items.append((H, ProjPoint.normalize([phi[e] for e in H.separating_edges], ep.q)))
    return HemisphereData(ep.graph, ep.q, tuple(items))


# -- enumeration ------------------------------------------------------------


def _class_problems(g: MultiGraph):
    """Split the search by circuit class.

    Each hemisphere's separating edges lie in a single class, and a cut with
    both sides connected determines its two sides, so every class carries a
    list of cuts, each shared by a hemisphere and its complement.  Returns,
    per class, the cuts and the edge sets to test: only unions of cuts can
    fail, since coordinates outside every cut inside A are never covered.
    """
    hems = hemispheres(g)
    classes = edge_classes(g)
    cls_of = {e: i for i, C in enumerate(classes) for e in C}
    cuts: list[list[tuple[str, ...]]] = [[] for _ in classes]
    owners: dict[tuple[str, ...], list[int]] = {}
    for k, H in enumerate(hems):
        ids = {cls_of[e] for e in H.separating_edges}
        if len(ids) != 1:
            raise AssertionError(f"separating edges of {H} meet several classes")
        cut = H.separating_edges
        if cut not in owners:
            owners[cut] = []
            cuts[ids.pop()].append(cut)
        owners[cut].append(k)
    if any(len(v) != 2 for v in owners.values()):
        raise AssertionError("a cut is not shared by exactly one hemisphere and its complement")
    problems = []
    for C, cs in zip(classes, cuts):
        # greedy order: next cut adds the fewest new edges
        order, covered, left = [], set(), list(cs)
        while left:
            best = min(left, key=lambda c: (len(set(c) - covered), g.edge_index(c[0])))
            order.append(best)
            covered |= set(best)
            left.remove(best)
        rank = {c: i for i, c in enumerate(order)}
        unions = set()
        for c in order:
            unions |= {u | frozenset(c) for u in unions} | {frozenset(c)}
        checks: list[list[tuple[tuple[str, ...], list[int]]]] = [[] for _ in order]
        for U in unions:
            members = [rank[c] for c in order if set(c) <= U]
            if len(members) < 2:
                continue  # one hyperplane is always proper
            checks[max(members)].append((g.sort_edges(U), members))
        problems.append((order, checks))
    return hems, owners, problems


def _solve_class(order, checks, q: int, invertible_only: bool, first: int | None = None):
    options = [enumerate_proj(len(c), q, invertible_only) for c in order]
    chosen: list = [None] * len(order)
    out = []

    def ok(step):
        for A, members in checks[step]:
            pos = {e: i for i, e in enumerate(A)}
            subs = [_kernel(chosen[m]) for m in members]
            incs = [[pos[e] for e in order[m]] for m in members]
            if subspace_sum(subs, incs, len(A), q).codim == 0:
                return False
        return True

    def rec(step):
        if step == len(order):
            out.append(tuple(chosen))
            return
        opts = options[step]
        if step == 0 and first is not None:
            opts = opts[first : first + 1]
        for p in opts:
            chosen[step] = p
            if ok(step):
                rec(step + 1)
        chosen[step] = None

    rec(0)
    return out


def _solve_task(g: MultiGraph, q: int, invertible_only: bool, k: int, first: int | None):
    _, _, problems = _class_problems(g)
    order, checks = problems[k]
    return [tuple(p.coords for p in row) for row in _solve_class(order, checks, q, invertible_only, first)]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ENRICHED_JOBS", "1")))
    except ValueError:
        return 1


def enumerate_ces(g: MultiGraph, q: int, invertible_only: bool = False, jobs: int = 1) -> list[HemisphereData]:
    """All compatible hemisphere data over F_q, sorted by coordinates.

    Solved class by class with backtracking; the data of different classes
    combine freely.  With ``jobs > 1`` each class is split by the point on
    its first cut and the pieces run in worker processes; the result does
    not depend on ``jobs``.
    """
    check_prime(q)
    if not g.is_connected():
        raise GraphError("graph must be connected")
    hems, owners, problems = _class_problems(g)
    tasks = []
    for k, (order, _) in enumerate(problems):
        width = len(enumerate_proj(len(order[0]), q, invertible_only)) if order else 0
        if jobs > 1 and width > 1:
            tasks += [(k, i) for i in range(width)]
        else:
            tasks.append((k, None))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as ex:
            futs = [ex.submit(_solve_task, g, q, invertible_only, k, first) for k, first in tasks]
            results = [f.result() for f in futs]
    else:
        results = [_solve_task(g, q, invertible_only, k, first) for k, first in tasks]
    per_class: list[list] = [[] for _ in problems]
    for (k, _), rows in zip(tasks, results):
        per_class[k].extend(rows)
    out = []
    for combo in product(*per_class):
        coords = {}
        for (order, _), row in zip(problems, combo):
            for cut, c in zip(order, row):
                for h in owners[cut]:
                    coords[h] = c
        out.append(HemisphereData(g, q, tuple((H, ProjPoint(coords[i], q)) for i, H in enumerate(hems))))
    out.sort(key=HemisphereData.sort_key)
    return out


def enumerate_ces_bruteforce(g: MultiGraph, q: int, invertible_only: bool = False) -> list[HemisphereData]:
    """Unpruned scan of the whole product, filtered by the full compatibility test."""
    hems = hemispheres(g)
    options = [enumerate_proj(len(H.separating_edges), q, invertible_only) for H in hems]
    out = []
    for combo in product(*options):
        hd = HemisphereData(g, q, tuple(zip(hems, combo)))
        if passes(hd, mode="full"):
            out.append(hd)
    out.sort(key=HemisphereData.sort_key)
    return out


def ces_at_point(lg: LabeledGraph, p: FieldPoint, q: int, invertible_only: bool = False, jobs: int = 1) -> list[HemisphereData]:
    """Compatible data on the graph over ``p``; nodes smoothed at ``p`` impose nothing."""
    return enumerate_ces(specialized_graph(lg, p).graph, q, invertible_only, jobs)
