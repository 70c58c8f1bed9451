import networkx as nx

import oracles
from chromdist.enumeration import connected_graphs, graphs, trees
from chromdist.graph import is_tree


def test_tree_counts():
    # OEIS A000055
    assert [len(trees(n)) for n in range(1, 10)] == [1, 1, 1, 2, 3, 6, 11, 23, 47]
    assert all(is_tree(t) for t in trees(7))


def test_graph_counts():
    # OEIS A000088 and A001349
    assert [len(graphs(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert [len(connected_graphs(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def test_classes_are_pairwise_non_isomorphic():
    gs = [oracles.to_nx(g) for g in graphs(5)]
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            assert not nx.is_isomorphic(a, b)
