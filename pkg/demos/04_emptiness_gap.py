"""Where the emptiness argument for non-aligned contractions breaks.

Contracting two edges of this graph is not aligned, and the degree count
certifies a strict inequality at every merged vertex.  Every relative
component of the source, however, has a contracted separating edge, so all
line bundles involved are trivial and the trivial tuple is a chart-enriched
structure.  The brute-force count over F_2 is therefore 1, not 0.
"""

from enrichedcurves import MultiGraph, contract, emptiness_certificate, gamma_es_bruteforce, is_aligned_contraction, relative_components

g = MultiGraph(
    ["v0", "v1", "v2", "v3"],
    [("e0", "v0", "v1"), ("e1", "v1", "v2"), ("e2", "v3", "v2"), ("e3", "v2", "v1"), ("e4", "v0", "v3")],
)
f = contract(g, ["e0", "e2"])
print(g, "\n->", f.target, "\naligned:", is_aligned_contraction(f))
for v in f.target.vertices:
    c = emptiness_certificate(f, v)
    if c is not None:
        print(
            f"at {v}: fibre {sorted(c.V)} lhs={c.lhs} rhs={c.rhs} valid={c.valid}; "
            f"degrees inside={c.inner_degree} (predicted {c.rhs}), outside={c.outer_degree} (predicted {-c.lhs})"
        )
for rc in relative_components(g):
    print(f"  {rc}: separating {rc.separating_edges}, contracted {set(rc.separating_edges) & f.contracted or '-'}")
print("chart-enriched structures over F_2:", gamma_es_bruteforce(f, 2))
