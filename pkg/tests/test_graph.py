from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccb.errors import GraphParseError, InvalidInputError, ResourceLimitError
from ccb.graph import (
    DefiningGraph,
    chromatic_number,
    clique_number,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    find_coloring,
    greedy_coloring,
    injective_embedding,
    is_cycle,
    is_embedding,
    maximal_cliques,
    parse_graph,
    path_graph,
    shortest_odd_cycle,
)

from conftest import data_graph


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    names = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(names, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return DefiningGraph(names, [p for p, keep in zip(pairs, mask) if keep])


def to_nx(g: DefiningGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def brute_chi(g: DefiningGraph) -> int:
    vs = list(g.vertices)
    for k in range(1, len(vs) + 1):
        for colours in itertools.product(range(k), repeat=len(vs)):
            c = dict(zip(vs, colours))
            if all(c[u] != c[w] for u, w in g.edges()):
                return k
    return 0


class TestParsing:
    def test_text_with_comments_and_isolated(self):
        g = parse_graph("# c\n\na b\nvertex z\nb c  # trailing\n")
        assert g.vertices == ("a", "b", "c", "z")
        assert g.edges() == [("a", "b"), ("b", "c")]
        assert g.degree("z") == 0

    def test_structured(self):
        g = parse_graph({"vertices": ["x", "y"], "edges": [["x", "y"]]})
        assert g.adjacent("x", "y") and g.num_edges() == 1

    def test_json_string(self):
        assert parse_graph('{"vertices": ["a"], "edges": []}') == DefiningGraph(["a"])

    def test_self_loop_reports_line(self):
        with pytest.raises(GraphParseError) as info:
            parse_graph("a b\nc c\n")
        assert info.value.line == 2

    def test_malformed_line(self):
        with pytest.raises(GraphParseError) as info:
            parse_graph("a b c\n")
        assert info.value.line == 1

    def test_unknown_key(self):
        with pytest.raises(GraphParseError):
            parse_graph({"vertices": [], "edges": [], "weights": []})

    def test_undeclared_edge_vertex(self):
        with pytest.raises(GraphParseError):
            parse_graph({"vertices": ["a"], "edges": [["a", "b"]]})

    def test_duplicate_edge_collapses(self):
        assert parse_graph("a b\nb a\n").num_edges() == 1

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_round_trip(self, g):
        assert parse_graph(g.to_text()) == g
        assert parse_graph(g.to_json()) == g
        assert parse_graph(g.to_dict()) == g


class TestCliques:
    def test_known_values(self):
        assert clique_number(cycle_graph(5)) == 2
        assert clique_number(complete_graph("abcd")) == 4
        assert clique_number(data_graph("k3")) == 3
        assert maximal_cliques(path_graph("abcd")) == [("a", "b"), ("b", "c"), ("c", "d")]

    def test_empty_graph_rejected(self):
        with pytest.raises(InvalidInputError):
            clique_number(DefiningGraph())

    @settings(max_examples=80, deadline=None)
    @given(graphs())
    def test_against_networkx(self, g):
        ours = sorted(maximal_cliques(g))
        theirs = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(g)))
        assert ours == theirs
        assert clique_number(g) == max(len(c) for c in theirs)

    def test_deterministic_order(self):
        g = complete_bipartite(3, 3)
        assert maximal_cliques(g) == maximal_cliques(DefiningGraph(reversed(g.vertices), g.edges()))


class TestColouring:
    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7))
    def test_chi_brute_force(self, g):
        chi = chromatic_number(g)
        assert chi == brute_chi(g)
        colouring = find_coloring(g, chi)
        assert all(colouring[u] != colouring[w] for u, w in g.edges())
        if chi > 1:
            assert find_coloring(g, chi - 1) is None

    def test_greedy_is_proper(self):
        g = cycle_graph(9)
        c = greedy_coloring(g)
        assert all(c[u] != c[w] for u, w in g.edges())

    def test_cycles(self):
        assert chromatic_number(cycle_graph(7)) == 3
        assert chromatic_number(cycle_graph(8)) == 2

    def test_bound(self):
        with pytest.raises(ResourceLimitError):
            chromatic_number(cycle_graph(25), max_vertices=20)

    def test_clique_bound_short_circuit(self):
        assert chromatic_number(complete_graph([f"k{i}" for i in range(30)]), max_vertices=5) == 30


class TestOddCycles:
    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_odd_cycle_graphs(self, n):
        g = cycle_graph(n)
        cycle = shortest_odd_cycle(g)
        assert len(cycle) == n and is_cycle(g, cycle)

    @pytest.mark.parametrize("n", [4, 6, 8, 10])
    def test_even_cycle_graphs(self, n):
        assert shortest_odd_cycle(cycle_graph(n)) is None

    @settings(max_examples=80, deadline=None)
    @given(graphs())
    def test_against_bipartiteness(self, g):
        cycle = shortest_odd_cycle(g)
        assert (cycle is None) == nx.is_bipartite(to_nx(g))
        if cycle is not None:
            assert len(cycle) % 2 == 1 and is_cycle(g, cycle)
            girth = min(
                (len(c) for c in nx.simple_cycles(to_nx(g)) if len(c) % 2 == 1), default=None
            )
            assert len(cycle) == girth


class TestEmbedding:
    def test_cycle_into_larger(self):
        m = injective_embedding(cycle_graph(4, "a"), complete_bipartite(2, 3))
        assert m is not None and is_embedding(cycle_graph(4, "a"), complete_bipartite(2, 3), m)

    def test_odd_cycle_not_into_bipartite(self):
        assert injective_embedding(cycle_graph(5, "a"), complete_bipartite(3, 3)) is None

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=4), graphs(max_n=5))
    def test_against_networkx_monomorphism(self, h, t):
        t = DefiningGraph([f"t{v}" for v in t.vertices], [(f"t{u}", f"t{w}") for u, w in t.edges()])
        gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(t), to_nx(h))
        expected = gm.subgraph_is_monomorphic()
        found = injective_embedding(h, t)
        assert (found is not None) == expected
        if found is not None:
            assert is_embedding(h, t, found)


def test_random_large_graph_cliques_agree():
    rng = random.Random(3)
    for _ in range(5):
        names = [f"n{i}" for i in range(25)]
        edges = [(u, w) for u, w in itertools.combinations(names, 2) if rng.random() < 0.4]
        g = DefiningGraph(names, edges)
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(to_nx(g)))
