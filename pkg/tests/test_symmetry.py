import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from chromdist import graph as G
from chromdist.enumeration import connected_graphs, graphs
from chromdist.graph import Graph
from chromdist.labeling import EdgeLabeling, VertexLabeling
from chromdist.symmetry import (GroupTooLarge, NotAnAutomorphism, automorphism_array, edge_action,
                                edge_action_array, enumerate_automorphisms,
                                find_isomorphism, find_preserving_automorphism, fixed_vertices,
                                has_fixed_vertex, is_automorphism, is_isomorphic)


@pytest.mark.parametrize("spec,order", [
    ("complete:6", 720),
    ("cycle:7", 14),
    ("path:6", 2),
    ("petersen", 120),
    ("kst:3,3", 72),
    ("kst:4,2", 48),
    ("friendship:3", 48),
    ("book:3", 12),
    ("symtree:2,3", 48),
    ("bisymtree:2,3", 128),
    ("substar:5", 120),
])
def test_known_group_orders(spec, order):
    assert len(automorphism_array(G.make_family(spec))) == order


def test_hypercube_order():
    q3 = G.cartesian_product(G.cartesian_product(G.path(2), G.path(2)), G.path(2))
    assert len(automorphism_array(q3)) == 48


def test_matches_brute_force_on_all_small_graphs():
    for n in range(1, 6):
        for g in graphs(n):
            ours = sorted(enumerate_automorphisms(g))
            assert ours == sorted(oracles.automorphisms(g)), g


def test_group_axioms_and_identity_first():
    for spec in ["petersen", "kst:3,2", "book:3", "cycle:6"]:
        g = G.make_family(spec)
        arr = automorphism_array(g)
        assert list(arr[0]) == list(range(g.n))
        rows = {tuple(r) for r in arr}
        assert len(rows) == len(arr)
        for f in arr[:12]:
            inv = np.argsort(f)
            assert tuple(inv) in rows
            for h in arr[:12]:
                assert tuple(f[h]) in rows
        assert all(is_automorphism(g, f) for f in arr)


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        automorphism_array(G.complete(8), limit=1000)
    assert len(automorphism_array(G.complete(8), limit=40320)) == 40320


def test_edge_action():
    g = G.cycle(5)
    rot = [1, 2, 3, 4, 0]
    act = edge_action(rot, g)
    assert sorted(act) == list(range(5)) and act != tuple(range(5))
    with pytest.raises(NotAnAutomorphism):
        edge_action([1, 0, 2, 3, 4], g)
    arr = automorphism_array(g)
    assert [tuple(r) for r in edge_action_array(arr, g)] == [edge_action(f, g) for f in arr]


def test_edge_action_is_faithful_except_k2():
    # Aut(G) acts faithfully on edges for connected graphs other than K_2
    for g in connected_graphs(5):
        arr = automorphism_array(g)
        assert len({tuple(r) for r in edge_action_array(arr, g)}) == len(arr)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2**21 - 1), st.integers(1, 3), st.integers(0, 10**6),
       st.booleans())
def test_preserving_automorphism_agrees_with_enumeration(n, mask, k, seed, edge_kind):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
    rng = random.Random(seed)
    if edge_kind:
        if g.m == 0:
            return
        lab = EdgeLabeling(k, [rng.randint(1, k) for _ in range(g.m)])
    else:
        lab = VertexLabeling(k, [rng.randint(1, k) for _ in range(g.n)])
    found = find_preserving_automorphism(g, lab)
    expected = oracles.preserving_automorphisms(g, lab.labels, lab.kind)
    if found is None:
        assert expected == []
    else:
        assert found in expected


def test_isomorphism_matches_networkx():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(4, 7)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            h = G.relabel(g, perm)
        else:
            h = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        expect = nx.is_isomorphic(oracles.to_nx(g), oracles.to_nx(h))
        assert is_isomorphic(g, h) == expect
        f = find_isomorphism(g, h)
        if f is not None:
            assert all(h.has_edge(f[u], f[v]) for u, v in g.edges)


def test_fixed_vertices_against_brute_force():
    for g in connected_graphs(5) + [G.subdivided_star(3), G.book(2)]:
        assert fixed_vertices(g) == oracles.fixed_vertices(g)
        assert has_fixed_vertex(g) == bool(oracles.fixed_vertices(g))


def test_friendship_order_formula():
    for n in range(2, 5):
        assert len(automorphism_array(G.friendship(n))) == 2 ** n * math.factorial(n)
