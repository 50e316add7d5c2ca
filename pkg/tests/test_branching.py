from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccb.branching import (
    Classifier,
    classify_all,
    is_branch_complemented,
    is_branching,
    is_directionally_bc,
    is_directionally_strongly_bc,
    is_strongly_bc,
    is_triangle_free,
    triangle_free_oracle,
)
from ccb.errors import InvalidInputError
from ccb.fixtures import bridged_suspensions
from ccb.graph import DefiningGraph, clique_number, complete_bipartite, cycle_graph, path_graph

from conftest import data_graph
from oracles import brute_flags


@st.composite
def graphs(draw, max_n=9, triangle_free=False):
    n = draw(st.integers(1, max_n))
    names = [f"v{i}" for i in range(n)]
    edges = []
    adj = {v: set() for v in names}
    for u, w in itertools.combinations(names, 2):
        if draw(st.booleans()):
            if triangle_free and adj[u] & adj[w]:
                continue
            edges.append((u, w))
            adj[u].add(w)
            adj[w].add(u)
    return DefiningGraph(names, edges)


def flags(g):
    return {v: (f.branching, f.branch_complemented, f.strongly_branch_complemented)
            for v, f in classify_all(g).per_vertex.items()}


def test_p4():
    g = path_graph("abcd")
    assert [is_branching(g, v) for v in "abcd"] == [False, True, True, False]
    assert [is_branch_complemented(g, v) for v in "abcd"] == [False, True, True, False]
    assert not any(is_strongly_bc(g, v) for v in "abcd")
    assert not is_directionally_strongly_bc(g, "bc")


def test_k3_all_false():
    report = classify_all(data_graph("k3"))
    assert report.rank == 3
    for f in report.per_vertex.values():
        assert (f.branching, f.branch_complemented, f.strongly_branch_complemented) == (False,) * 3
        assert f.in_some_top_clique


def test_c5_everything_true():
    g = cycle_graph(5)
    report = classify_all(g)
    assert report.rank == 2
    assert all(flags(g)[v] == (True, True, True) for v in g)
    assert all(f.directionally_bc and f.directionally_strongly_bc for f in report.per_clique.values())


def test_star_centre():
    g = complete_bipartite(1, 3)
    assert is_branching(g, "x0") and not is_branch_complemented(g, "x0")
    assert triangle_free_oracle(g, "x0") == (True, False)
    assert not is_directionally_bc(g, ["x0", "y0"])


def test_bridged_suspensions_examples():
    g = bridged_suspensions()
    c = Classifier(g)
    assert c.is_branching("t1")
    assert c.is_directionally_bc(["t1", "v1", "v2"])
    assert c.is_directionally_strongly_bc(["t1", "t2"])
    assert not c.is_top_dimensional(["t1", "t2"])


def test_single_and_isolated_vertices():
    assert flags(DefiningGraph(["a"])) == {"a": (True, True, True)}
    assert flags(DefiningGraph(["a", "b"])) == {"a": (True, True, True), "b": (True, True, True)}
    g = DefiningGraph(["a", "b", "z"], [("a", "b")])
    assert flags(g)["z"] == (False, False, False)


def test_errors():
    g = path_graph("abc")
    with pytest.raises(InvalidInputError):
        is_branching(g, "q")
    with pytest.raises(InvalidInputError):
        is_directionally_bc(g, ["a", "c"])
    with pytest.raises(InvalidInputError):
        classify_all(DefiningGraph())
    with pytest.raises(InvalidInputError):
        triangle_free_oracle(data_graph("k3"), "a")


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_matches_brute_force_definitions(g):
    assert flags(g) == brute_flags(g.vertices, g.edges())


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=12))
def test_flag_chain(g):
    report = classify_all(g)
    for f in report.per_vertex.values():
        assert not f.strongly_branch_complemented or f.branch_complemented
        assert not f.branch_complemented or f.branching
    for f in report.per_clique.values():
        assert not f.directionally_strongly_bc or f.directionally_bc
    assert {c for c in report.per_clique} == set(Classifier(g).maximal)
    assert report.rank == clique_number(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=12, triangle_free=True))
def test_triangle_free_agreement(g):
    assert is_triangle_free(g)
    if not g.num_edges():
        return
    c = Classifier(g)
    for v in g:
        assert triangle_free_oracle(g, v) == (c.is_branching(v), c.is_branch_complemented(v))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_intersection_soundness(g):
    c = Classifier(g)
    for v in g:
        if c.is_branching(v):
            assert frozenset.intersection(*c.witnesses(frozenset([v]), c.top)) == {v}
        if c.is_strongly_bc(v):
            assert frozenset.intersection(*c.witnesses(frozenset([v]), c.dbc_top)) == {v}


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10, triangle_free=True), st.data())
def test_edge_deletion_monotone(g, data):
    if g.num_edges() < 2:
        return
    u, w = data.draw(st.sampled_from(g.edges()))
    h = g.remove_edge(u, w)
    if clique_number(h) != clique_number(g):
        return
    before, after = flags(g), flags(h)
    for i in range(3):
        assert sum(f[i] for f in after.values()) <= sum(f[i] for f in before.values())
