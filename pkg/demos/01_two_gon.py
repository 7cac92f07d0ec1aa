"""Two components meeting in two nodes.

The enriched structures form a torus of dimension one, so there are q - 1
of them over F_q.  The compactified version adds the two limit points of
the projective line, giving q + 1.
"""

from enrichedcurves import enumerate_ces, enumerate_es, is_invertible, standard_graphs

g = standard_graphs()["2-gon"]
print(g)
for q in (2, 3, 5, 7):
    es = enumerate_es(g, q)
    ces = enumerate_ces(g, q)
    boundary = [h for h in ces if not is_invertible(h)]
    print(f"q={q}: {len(es)} enriched, {len(ces)} compactified, {len(boundary)} at the boundary")

print("\nover F_5:")
for e in enumerate_es(g, 5):
    print("  ", e.describe())
for h in enumerate_ces(g, 5):
    print("  ", h.describe(), "" if is_invertible(h) else "(boundary)")
