import random

import pytest
from hypothesis import given, strategies as st

from conftest import connected_graphs
from oracles import dimension_oracle
from enrichedcurves.graph import GraphError, MultiGraph, circuit_partition, contract, relative_components
from enrichedcurves.specialization import (
    CLOSED_POINT,
    FieldPoint,
    LabeledGraph,
    dimension_by_blocks,
    dimension_by_vertices,
    dimension_N,
    is_aligned_contraction,
    is_one_aligned,
    is_one_aligned_at,
    psi_bijection,
    specialize,
    specialized_graph,
)


def block_labelled(g):
    """Every circuit class gets its own label, which makes the graph 1-aligned."""
    label = {}
    for i, b in enumerate(circuit_partition(g)):
        for e in b:
            label[e] = f"x{i}"
    return LabeledGraph(g, label)


def test_labeled_graph_validation(graphs):
    with pytest.raises(GraphError):
        LabeledGraph(graphs["2-gon"], {"e1": "x"})
    with pytest.raises(GraphError):
        LabeledGraph(graphs["path"], {"e": "x", "zz": "y"})


class TestSpecialize:
    def test_one_unit(self, graphs):
        lg = LabeledGraph.distinct(graphs["triangle"])
        sp = specialized_graph(lg, FieldPoint({"a"}))
        assert sp.graph.edges == ("b", "c") and len(sp.graph.vertices) == 2
        assert dict(sp.label) == {"b": "b", "c": "c"}

    def test_closed_point_is_identity(self, graphs):
        lg = LabeledGraph.distinct(graphs["triangle"])
        f = specialize(lg, CLOSED_POINT)
        assert f.target == lg.graph and not f.contracted

    def test_all_units(self, graphs):
        lg = LabeledGraph.distinct(graphs["triangle"])
        assert specialize(lg, FieldPoint("abc")).target.vertices == ("u",)

    def test_unknown_label(self, graphs):
        with pytest.raises(GraphError):
            specialize(LabeledGraph.distinct(graphs["triangle"]), FieldPoint({"q"}))

    @given(connected_graphs(max_vertices=5, max_edges=8), st.integers(0, 2**16))
    def test_functorial_in_units(self, g, seed):
        lg = LabeledGraph.distinct(g)
        rng = random.Random(seed)
        u1 = {x for x in lg.labels if rng.random() < 0.4}
        u2 = {x for x in lg.labels if rng.random() < 0.4}
        f1 = specialize(lg, FieldPoint(u1))
        f12 = specialize(lg, FieldPoint(u1 | u2))
        step = contract(f1.target, [e for e in f1.target.edges if lg.label[e] in u2])
        assert f1.then(step).target == f12.target


class TestOneAligned:
    def test_equal_labels(self, graphs):
        assert is_one_aligned(LabeledGraph(graphs["2-gon"], {"e1": "x", "e2": "x"}))

    def test_unequal_labels(self, graphs):
        assert not is_one_aligned(LabeledGraph(graphs["2-gon"], {"e1": "x", "e2": "y"}))

    def test_triangle_distinct(self, graphs):
        assert not is_one_aligned(LabeledGraph.distinct(graphs["triangle"]))

    def test_at_point(self, graphs):
        lg = LabeledGraph.distinct(graphs["triangle"])
        assert not is_one_aligned_at(lg, CLOSED_POINT)
        assert is_one_aligned_at(lg, FieldPoint("ab"))


class TestAlignedContraction:
    def test_identity(self, graphs):
        assert is_aligned_contraction(contract(graphs["triangle"], []))

    def test_one_edge_of_triangle(self, graphs):
        assert not is_aligned_contraction(contract(graphs["triangle"], ["a"]))

    def test_whole_triangle(self, graphs):
        assert is_aligned_contraction(contract(graphs["triangle"], "abc"))

    def test_spanning_subgraph_suffices(self, graphs):
        assert is_aligned_contraction(contract(graphs["triangle"], "ab"))

    @given(connected_graphs(max_vertices=5, max_edges=8), st.integers(0, 2**16))
    def test_one_aligned_specialisations_are_aligned(self, g, seed):
        lg = block_labelled(g)
        rng = random.Random(seed)
        p = FieldPoint(x for x in lg.labels if rng.random() < 0.5)
        assert is_one_aligned(lg)
        assert is_aligned_contraction(specialize(lg, p))


class TestPsi:
    def test_identity(self, graphs):
        lg = LabeledGraph(graphs["2-gon"], {"e1": "x", "e2": "x"})
        psi = psi_bijection(lg, CLOSED_POINT)
        assert all(k == v for k, v in psi.forward.items()) and len(psi) == 2

    def test_to_point(self, graphs):
        lg = LabeledGraph(graphs["2-gon"], {"e1": "x", "e2": "x"})
        psi = psi_bijection(lg, FieldPoint({"x"}))
        assert len(psi.forward) == 0 and len(psi.backward) == 0

    def test_requires_alignment(self, graphs):
        with pytest.raises(ValueError):
            psi_bijection(LabeledGraph.distinct(graphs["triangle"]), CLOSED_POINT)

    def test_chain_of_2gons(self):
        g = MultiGraph(
            ["u", "v", "w", "z"],
            {"a1": ("u", "v"), "a2": ("u", "v"), "b1": ("v", "w"), "b2": ("v", "w"), "c": ("w", "z")},
        )
        lg = LabeledGraph(g, {"a1": "x", "a2": "x", "b1": "y", "b2": "y", "c": "z"})
        psi = psi_bijection(lg, FieldPoint({"x", "z"}))
        tgt = specialize(lg, FieldPoint({"x", "z"})).target
        assert set(psi.backward) == set(relative_components(tgt))
        for a, b in psi.forward.items():
            assert psi.backward[b] == a
        for a, b in psi.backward.items():
            assert psi.forward[b] == a
        # the domain consists of the components whose separating edges survive
        assert len(psi.forward) == 2

    @given(connected_graphs(max_vertices=5, max_edges=8), st.integers(0, 2**16))
    def test_mutually_inverse(self, g, seed):
        lg = block_labelled(g)
        rng = random.Random(seed)
        p = FieldPoint(x for x in lg.labels if rng.random() < 0.5)
        psi = psi_bijection(lg, p)
        f = specialize(lg, p)
        assert set(psi.backward) == set(relative_components(f.target))
        for a, b in psi.forward.items():
            assert psi.backward[b] == a
            assert (b.v, b.G) == (f.vertex_map[a.v], f.image(a.G))
        for a, b in psi.backward.items():
            assert psi.forward[b] == a


class TestDimension:
    def test_2gon(self, graphs):
        assert dimension_N(graphs["2-gon"]) == 1

    def test_triangle(self, graphs):
        g = graphs["triangle"]
        # one class with 3 edges; 3 non-loop edges + 3 vertices - 3 components - 1
        assert dimension_by_blocks(g) == 2 and dimension_by_vertices(g) == 2

    def test_path(self, graphs):
        assert dimension_N(graphs["path"]) == 0

    def test_disconnected(self):
        with pytest.raises(GraphError):
            dimension_N(MultiGraph(["u", "v"], {}))

    @given(connected_graphs(max_vertices=7, max_edges=12))
    def test_formulas_agree(self, g):
        assert dimension_by_blocks(g) == dimension_by_vertices(g) == dimension_oracle(g)
