"""Command line interface: ``enriched analyze|count|atlas|selftest``.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .atlas import atlas_report
from .compactified import HemisphereData, ces_at_point, default_jobs, is_compatible
from .enriched import EnrichedPoint, enumerate_es, es_at_point, gamma_es_at_point
from .ffield import check_prime
from .graph import GraphError, RelativeComponent, circuit_partition, contract, hemispheres, relative_components
from .randgraph import random_connected_multigraph
from .specfile import GraphSpec, SpecError, parse_spec
from .specialization import FieldPoint, dimension_by_blocks, dimension_by_vertices, dimension_N


class InputError(Exception):
    pass


def _read(path: str) -> GraphSpec:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)


def _emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# -- analyze ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    spec = _read(args.graph)
    g = spec.lg.graph
    blocks = [list(g.sort_edges(b)) for b in circuit_partition(g)]
    connected = g.is_connected()
    payload = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "loops": len(g.loops),
        "connected": connected,
        "circuit_partition": blocks,
    }
    lines = [
        f"vertices: {len(g.vertices)}",
        f"edges: {len(g.edges)}",
        f"loops: {len(g.loops)}",
        f"connected: {'yes' if connected else 'no'}",
        "circuit partition: " + " | ".join(",".join(b) for b in blocks),
    ]
    if connected:
        rcs = relative_components(g)
        hems = hemispheres(g)
        nb, nv = dimension_by_blocks(g), dimension_by_vertices(g)
        N = dimension_N(g)
        payload.update(
            relative_components=[_rc_json(rc) for rc in rcs],
            hemispheres=[{"G": g.sort_vertices(H.G), "separating_edges": list(H.separating_edges)} for H in hems],
            N={"by_blocks": nb, "by_vertices": nv, "value": N},
        )
        lines.append(f"relative components ({len(rcs)}):")
        lines += [f"  {rc} via {','.join(rc.separating_edges)}" for rc in rcs]
        lines.append(f"hemispheres ({len(hems)}):")
        lines += [f"  {H} via {','.join(H.separating_edges)}" for H in hems]
        lines.append(f"N: {N} (blocks {nb}, vertices {nv})")
    _emit(args, payload, lines)
    return 0


def _rc_json(rc: RelativeComponent) -> dict:
    return {"v": rc.v, "G": sorted(rc.G), "separating_edges": list(rc.separating_edges)}


# -- count ------------------------------------------------------------------


def _point(spec: GraphSpec, args) -> tuple[str, FieldPoint]:
    if args.units is not None:
        units = [u for u in args.units.split(",") if u]
        bad = sorted(set(units) - set(spec.lg.labels))
        if bad:
            raise InputError(f"unknown label(s): {', '.join(bad)}")
        return "units={" + ",".join(sorted(units)) + "}", FieldPoint(units)
    try:
        return args.point, spec.point(args.point)
    except SpecError as exc:
        raise InputError(str(exc)) from None


def es_json(ep: EnrichedPoint) -> dict:
    return {
        "components": [
            {"v": rc.v, "G": sorted(rc.G), "scalars": dict(zip(rc.separating_edges, vec))} for rc, vec in ep.items
        ]
    }


def ces_json(hd: HemisphereData) -> dict:
    return {"hemispheres": [{"G": sorted(H.G), "coords": list(p.coords)} for H, p in hd.items]}


def load_es_dump(g, q: int, doc: dict) -> EnrichedPoint:
    """Rebuild (and re-validate) an enriched structure from its JSON dump."""
    rcs = {(rc.v, rc.G): rc for rc in relative_components(g)}
    scalars = {}
    for rec in doc["components"]:
        rc = rcs[(rec["v"], frozenset(rec["G"]))]
        scalars[rc] = [rec["scalars"][e] for e in rc.separating_edges]
    return EnrichedPoint.from_scalars(g, scalars, q)


def load_ces_dump(g, q: int, doc: dict) -> HemisphereData:
    """Rebuild a hemisphere datum from its JSON dump; raises if it is not compatible."""
    hd = HemisphereData.from_mapping(g, {frozenset(r["G"]): r["coords"] for r in doc["hemispheres"]}, q)
    if not is_compatible(hd, mode="classes").passed:
        raise ValueError("dumped datum is not compatible")
    return hd


def cmd_count(args) -> int:
    spec = _read(args.graph)
    q = _prime(args.q)
    lg = spec.lg
    name, p = _point(spec, args)
    if not lg.graph.is_connected():
        raise InputError("graph must be connected")
    items = None
    if args.kind == "es":
        found = es_at_point(lg, p, q)
        count, items = len(found), [es_json(x) for x in found]
        text_items = [x.describe() for x in found]
    elif args.kind == "ces":
        found = ces_at_point(lg, p, q, invertible_only=args.invertible, jobs=args.jobs)
        count, items = len(found), [ces_json(x) for x in found]
        text_items = [x.describe() for x in found]
    else:
        gamma = [e for e in (args.gamma or "").split(",") if e]
        bad = sorted(set(gamma) - set(lg.graph.edges))
        if bad:
            raise InputError(f"unknown gamma edge(s): {', '.join(bad)}")
        chart = contract(lg.graph, gamma)
        try:
            count = gamma_es_at_point(lg, chart, p, q)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        text_items = []
    payload = {"kind": args.kind, "q": q, "point": name, "count": count}
    lines = [str(count)]
    if args.enumerate and items is not None:
        payload["items"] = items
        lines += text_items
    _emit(args, payload, lines)
    return 0


def _prime(q: int) -> int:
    try:
        return check_prime(q)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- atlas ------------------------------------------------------------------


def cmd_atlas(args) -> int:
    spec = _read(args.graph)
    q = _prime(args.q)
    if not spec.lg.graph.is_connected():
        raise InputError("graph must be connected")
    rep = atlas_report(spec.lg, q, bruteforce=not args.no_bruteforce)
    pnames = ["{" + ",".join(sorted(p.units)) + "}" for p in rep.points]
    rows = []
    for i, c in enumerate(rep.charts):
        row = {"chart": c.name, "aligned": c.aligned, "cells": []}
        for j in range(len(rep.points)):
            cell = rep.cells[(i, j)]
            if not cell.in_locus:
                row["cells"].append(None)
            else:
                row["cells"].append(
                    {
                        "count": cell.count,
                        "bruteforce": cell.bruteforce,
                        "aligned_to_point": cell.aligned,
                        "glues": cell.glues,
                        "certificate": any(x.valid for x in cell.certificates),
                    }
                )
        rows.append(row)
    payload = {"q": q, "points": pnames, "es_counts": rep.es_counts, "charts": rows, "issues": rep.issues}

    def fmt(cell):
        if cell is None:
            return "."
        mark = "" if cell["aligned_to_point"] else "!"
        glue = "" if cell["glues"] else "x"
        return f"{cell['count']}{mark}{glue}"

    width = max([len(r["chart"]) for r in rows] + [5])
    cw = max(len(n) for n in pnames + ["E(p)"]) + 1
    lines = [" " * width + "  " + "".join(n.rjust(cw) for n in pnames)]
    lines.append("E(p)".ljust(width) + "  " + "".join(str(n).rjust(cw) for n in rep.es_counts))
    for r in rows:
        lines.append(r["chart"].ljust(width) + ("  " if r["aligned"] else "* ") + "".join(fmt(c).rjust(cw) for c in r["cells"]))
    lines.append("legend: . outside chart locus; ! chart not aligned to point graph; x not glueing with the point's own chart; * chart not aligned")
    lines += [f"issue: {s}" for s in rep.issues]
    _emit(args, payload, lines)
    return 0


# -- selftest ---------------------------------------------------------------


def cmd_selftest(args) -> int:
    from .compactified import ces_to_es, enumerate_ces, es_to_ces
    from .enriched import from_maino, to_maino
    from .graph import circuit_partition as cp

    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
    print(f"seed: {seed}")
    rng = random.Random(seed)
    failures = 0
    for k in range(args.count):
        g = random_connected_multigraph(rng, max_vertices=4, max_edges=6)
        checks = {
            "dimension": dimension_by_blocks(g) == dimension_by_vertices(g),
            "partition": sorted(map(sorted, cp(g))) == sorted(map(sorted, cp(g, method="blocks"))),
        }
        es = enumerate_es(g, 2 if k % 2 else 3)
        checks["count law"] = len(es) == (es[0].q - 1) ** dimension_N(g)
        checks["maino"] = all(from_maino(to_maino(e)) == e for e in es)
        checks["comparison"] = all(ces_to_es(es_to_ces(e)) == e for e in es) and len(
            enumerate_ces(g, es[0].q, invertible_only=True)
        ) == len(es)
        bad = [n for n, ok in checks.items() if not ok]
        if bad:
            failures += 1
            print(f"graph {k}: FAIL {', '.join(bad)}: {g}")
    print(f"{args.count - failures}/{args.count} graphs passed")
    return 0 if failures == 0 else 3


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="enriched", description="Enriched structures on dual graphs of nodal curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("graph", nargs="?", default="-", help="graph document (JSON); '-' for stdin")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("analyze", help="graph structure and the fibre dimension N")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="count structures over F_q at a point")
    common(p)
    p.add_argument("--kind", choices=["es", "ces", "gamma-es"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--point", default="closed", help="named point from the document (default: closed)")
    p.add_argument("--units", help="comma-separated unit labels (overrides --point)")
    p.add_argument("--gamma", help="comma-separated edges contracted by the chart (gamma-es)")
    p.add_argument("--enumerate", action="store_true", help="also list the structures")
    p.add_argument("--invertible", action="store_true", help="ces: only invertible data")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("atlas", help="chart by point table")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-bruteforce", action="store_true", help="skip the direct cross-check counts")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("selftest", help="randomized consistency checks")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
