import pytest
from hypothesis import given

from conftest import connected_graphs
from oracles import circuits_by_subsets, components_without, partition_by_networkx
from enrichedcurves.graph import (
    Circuit,
    GraphError,
    MultiGraph,
    circuit_partition,
    connected_components,
    contract,
    enumerate_circuits,
    hemispheres,
    identity_contraction,
    relative_components,
)


def test_constructor_rejects_bad_input():
    with pytest.raises(GraphError):
        MultiGraph(["u", "u"], {})
    with pytest.raises(GraphError):
        MultiGraph(["u"], {"e": ("u", "x")})
    with pytest.raises(GraphError):
        MultiGraph(["u", "v"], [("e", "u", "v"), ("e", "v", "u")])


def test_empty_graph_is_not_connected():
    assert not MultiGraph([], {}).is_connected()


class TestConnectedComponents:
    def test_2gon(self, graphs):
        assert connected_components(graphs["2-gon"]) == [frozenset("uv")]

    def test_isolated_vertex(self):
        g = MultiGraph(["u", "v", "w"], {"e1": ("u", "v"), "e2": ("u", "v")})
        assert sorted(map(sorted, connected_components(g))) == [["u", "v"], ["w"]]

    def test_triangle_minus_vertex(self, graphs):
        assert connected_components(graphs["triangle"], removed=["u"]) == [frozenset("vw")]


class TestCircuits:
    def test_loop(self, graphs):
        cs = enumerate_circuits(graphs["loop"])
        assert len(cs) == 1 and len(cs[0]) == 1

    def test_2gon(self, graphs):
        cs = enumerate_circuits(graphs["2-gon"])
        assert [c.edge_set for c in cs] == [frozenset({"e1", "e2"})]

    def test_triangle(self, graphs):
        g = graphs["triangle"]
        assert {c.edge_set for c in enumerate_circuits(g)} == circuits_by_subsets(g) == {frozenset("abc")}

    def test_circuits_are_valid(self, graphs):
        for g in graphs.values():
            for c in enumerate_circuits(g):
                assert c.is_valid_in(g)

    def test_invalid_circuit_detected(self, graphs):
        g = graphs["triangle"]
        assert not Circuit(("u", "v"), ("a", "b")).is_valid_in(g)

    @given(connected_graphs(max_vertices=6, max_edges=9))
    def test_matches_subset_oracle(self, g):
        found = [c.edge_set for c in enumerate_circuits(g)]
        assert len(found) == len(set(found))
        assert set(found) == circuits_by_subsets(g)


class TestPartition:
    def test_triangle(self, graphs):
        assert circuit_partition(graphs["triangle"]) == [frozenset("abc")]

    def test_path_of_bridges(self):
        g = MultiGraph(["u", "v", "w"], {"x": ("u", "v"), "y": ("v", "w")})
        assert sorted(map(sorted, circuit_partition(g))) == [["x"], ["y"]]

    def test_2gon_with_loop(self):
        g = MultiGraph(["u", "v"], {"e1": ("u", "v"), "e2": ("u", "v"), "l": ("u", "u")})
        assert sorted(map(sorted, circuit_partition(g))) == [["e1", "e2"], ["l"]]

    def test_unknown_method(self, graphs):
        with pytest.raises(ValueError):
            circuit_partition(graphs["triangle"], method="magic")

    @given(connected_graphs(max_vertices=6, max_edges=10))
    def test_partition_laws(self, g):
        blocks = circuit_partition(g)
        flat = [e for b in blocks for e in b]
        assert sorted(flat) == sorted(g.edges)
        circuits = circuits_by_subsets(g)
        owner = {e: i for i, b in enumerate(blocks) for e in b}
        for e in g.edges:
            for f in g.edges:
                if e == f:
                    continue
                shared = any(e in c and f in c for c in circuits)
                assert shared == (owner[e] == owner[f])

    @given(connected_graphs(max_vertices=6, max_edges=10))
    def test_two_methods_and_networkx_agree(self, g):
        a = sorted(map(sorted, circuit_partition(g, method="circuits")))
        b = sorted(map(sorted, circuit_partition(g, method="blocks")))
        c = sorted(map(sorted, partition_by_networkx(g)))
        assert a == b == c


class TestRelativeComponents:
    def test_one_vertex(self):
        g = MultiGraph(["u"], {"l1": ("u", "u"), "l2": ("u", "u"), "l3": ("u", "u")})
        assert relative_components(g) == []

    def test_2gon(self, graphs):
        rcs = relative_components(graphs["2-gon"])
        assert [(rc.v, set(rc.G), rc.separating_edges) for rc in rcs] == [
            ("u", {"v"}, ("e1", "e2")),
            ("v", {"u"}, ("e1", "e2")),
        ]

    def test_triangle(self, graphs):
        rcs = relative_components(graphs["triangle"])
        assert len(rcs) == 3 and all(len(rc.separating_edges) == 2 for rc in rcs)

    def test_disconnected_rejected(self):
        with pytest.raises(GraphError):
            relative_components(MultiGraph(["u", "v"], {}))

    @given(connected_graphs(max_vertices=6, max_edges=10))
    def test_invariants(self, g):
        hem = {H.G for H in hemispheres(g)}
        blocks = circuit_partition(g)
        for rc in relative_components(g):
            assert rc.G in components_without(g, rc.v)
            assert rc.G in hem
            for e in rc.separating_edges:
                u, w = g.ends[e]
                assert {u, w} - {rc.v} <= rc.G and rc.v in (u, w)
            assert sum(1 for b in blocks if set(rc.separating_edges) & b) == 1


class TestHemispheres:
    def test_2gon(self, graphs):
        assert [H.G for H in hemispheres(graphs["2-gon"])] == [frozenset("u"), frozenset("v")]

    def test_triangle(self, graphs):
        got = [set(H.G) for H in hemispheres(graphs["triangle"])]
        assert got == [{"u"}, {"v"}, {"w"}, {"u", "v"}, {"u", "w"}, {"v", "w"}]

    def test_one_vertex(self, graphs):
        assert hemispheres(graphs["loop"]) == []

    @given(connected_graphs(max_vertices=6, max_edges=9))
    def test_complements_and_connectivity(self, g):
        hs = {H.G: H for H in hemispheres(g)}
        everything = frozenset(g.vertices)
        for G, H in hs.items():
            assert g.induced_connected(G) and g.induced_connected(everything - G)
            assert everything - G in hs
            assert set(H.separating_edges) == set(hs[everything - G].separating_edges)


class TestContract:
    def test_identity(self, graphs):
        f = identity_contraction(graphs["triangle"])
        assert f.target == graphs["triangle"] and f.is_valid()

    def test_triangle_to_2gon(self, graphs):
        f = contract(graphs["triangle"], ["a"])
        assert f.target == MultiGraph(["u", "w"], {"b": ("u", "w"), "c": ("w", "u")})
        assert f.is_valid()

    def test_2gon_to_point(self, graphs):
        f = contract(graphs["2-gon"], ["e1", "e2"])
        assert f.target.vertices == ("u",) and f.target.edges == ()

    def test_loop_vanishes(self, graphs):
        f = contract(graphs["loop"], ["l"])
        assert f.target.edges == () and f.edge_map["l"] == "u"

    def test_unknown_edge(self, graphs):
        with pytest.raises(GraphError):
            contract(graphs["triangle"], ["zz"])

    @given(connected_graphs(max_vertices=5, max_edges=7))
    def test_composition(self, g):
        es = g.edges
        s1, s2 = set(es[::2]), set(es[1::3])
        f1 = contract(g, s1)
        f2 = contract(f1.target, [f1.edge_map[e] for e in s2 - s1])
        both = contract(g, s1 | s2)
        comp = f1.then(f2)
        assert comp.is_valid()
        assert comp.target == both.target
        assert dict(comp.vertex_map) == dict(both.vertex_map)
        assert comp.contracted == both.contracted
