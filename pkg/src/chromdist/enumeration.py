"""Exhaustive generation of small graphs up to isomorphism.

Both generators grow graphs one step at a time (a leaf for trees, an edge
for general graphs) and keep one representative per isomorphism class,
bucketing by a cheap invariant and confirming with :func:`is_isomorphic`.
"""

from __future__ import annotations

from typing import Iterator

from .graph import Graph
from .symmetry import is_isomorphic


def _invariant(g: Graph):
    deg = g.degrees
    return (g.n, g.m, tuple(sorted(deg)),
            tuple(sorted(tuple(sorted(deg[u] for u in g.adj[v])) for v in range(g.n))))


class _Classes:
    def __init__(self):
        self.buckets: dict = {}
        self.order: list[Graph] = []

    def add(self, g: Graph) -> bool:
        bucket = self.buckets.setdefault(_invariant(g), [])
        if any(is_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.order.append(g)
        return True


def trees(n: int) -> list[Graph]:
    """All trees on ``n`` vertices, one per isomorphism class."""
    if n < 1:
        return []
    level = [Graph(1)]
    for size in range(2, n + 1):
        classes = _Classes()
        for t in level:
            for v in range(t.n):
                classes.add(Graph(size, list(t.edges) + [(v, size - 1)]))
        level = classes.order
    return level


def all_trees(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from trees(n)


def graphs(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, by increasing edge count."""
    level = [Graph(n)]
    out = list(level)
    for _ in range(n * (n - 1) // 2):
        classes = _Classes()
        for g in level:
            for u in range(n):
                for v in range(u + 1, n):
                    if not g.has_edge(u, v):
                        classes.add(Graph(n, list(g.edges) + [(u, v)]))
        level = classes.order
        out.extend(level)
    return out


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in graphs(n) if g.is_connected()]
