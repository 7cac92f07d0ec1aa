"""Enriched structures against invertible compatible hemisphere data.

For a few random graphs, both sides are enumerated over F_3 and the two
maps between them are checked to be mutually inverse.
"""

from enrichedcurves import ces_to_es, enumerate_ces, enumerate_es, es_to_ces, hemispheres
from enrichedcurves.randgraph import random_graphs

q = 3
for g in random_graphs(2026, 6, max_vertices=4, max_edges=6):
    es = enumerate_es(g, q)
    ces = enumerate_ces(g, q, invertible_only=True)
    round_trip = all(ces_to_es(es_to_ces(e)) == e for e in es) and all(es_to_ces(ces_to_es(h)) == h for h in ces)
    print(f"{g}\n   hemispheres={len(hemispheres(g))} es={len(es)} invertible ces={len(ces)} inverse={round_trip}")

g = random_graphs(2026, 3, max_vertices=4, max_edges=6)[2]
e = enumerate_es(g, q)[-1]
print("\nexample:\n  ", e.describe(), "\n  ", es_to_ces(e).describe())
