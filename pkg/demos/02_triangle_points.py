"""A triangle of components as its nodes are smoothed one by one.

With labels a, b, c a point is described by which labels are units.  The
graph over the point is the triangle with those edges contracted.
"""

from enrichedcurves import FieldPoint, LabeledGraph, contract, es_at_point, gamma_es_at_point, specialize, standard_graphs
from enrichedcurves.specialization import dimension_N

g = standard_graphs()["triangle"]
lg = LabeledGraph.distinct(g)
ident = contract(g, [])
q = 5
for units in ([], ["a"], ["a", "b"], ["a", "b", "c"]):
    p = FieldPoint(units)
    over = specialize(lg, p).target
    n = len(es_at_point(lg, p, q))
    print(f"units {units!s:16} graph {over}  N={dimension_N(over)}  es={n}")
    print(f"{'':22}identity chart sees {gamma_es_at_point(lg, ident, p, q)}")
