"""Automorphism search by individualization and equitable refinement.

Every search here works on a *colored* graph: an initial vertex coloring
plus a label on each edge.  Plain automorphisms use all-zero colors, a
vertex labeling supplies the vertex colors, and an edge labeling supplies
the edge labels.  Refinement replaces each vertex color by
``(color, sorted multiset of (edge label, neighbour color))`` until the
number of cells stops growing; both sides of a candidate mapping are refined
together so that color indices stay comparable.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .graph import Graph
from .labeling import EdgeLabeling, Labeling, VertexLabeling


class GroupTooLarge(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"automorphism group has more than {limit} elements")
        self.limit = limit


class NotAnAutomorphism(ValueError):
    pass


class _Colored:
    """Adjacency with edge labels, in the two shapes the search needs."""

    __slots__ = ("n", "nbrs", "lookup")

    def __init__(self, g: Graph, edge_labels: Optional[Sequence[int]] = None):
        self.n = g.n
        nbrs = [[] for _ in range(g.n)]
        lookup = [dict() for _ in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            lab = 0 if edge_labels is None else edge_labels[i]
            nbrs[u].append((v, lab))
            nbrs[v].append((u, lab))
            lookup[u][v] = lab
            lookup[v][u] = lab
        self.nbrs = nbrs
        self.lookup = lookup


def _refine_pair(a: _Colored, b: _Colored, cl: list, cr: list):
    """Refine both colorings in lock-step; ``None`` if they become incompatible."""
    n = a.n
    ncells = len(set(cl))
    while True:
        sl = [(cl[v], tuple(sorted([(lab, cl[u]) for u, lab in a.nbrs[v]]))) for v in range(n)]
        if a is b and cl is cr:
            sr = sl
        else:
            sr = [(cr[v], tuple(sorted([(lab, cr[u]) for u, lab in b.nbrs[v]]))) for v in range(n)]
            if sorted(sl) != sorted(sr):
                return None
        keys = sorted(set(sl))
        if len(keys) == ncells:
            return cl, cr
        index = {key: i for i, key in enumerate(keys)}
        cl = [index[s] for s in sl]
        cr = cl if sr is sl else [index[s] for s in sr]
        ncells = len(keys)


def _target_cell(cl: list):
    """Smallest color whose cell has more than one vertex, with its members."""
    counts = {}
    for c in cl:
        counts[c] = counts.get(c, 0) + 1
    multi = [c for c, k in counts.items() if k > 1]
    if not multi:
        return None
    c = min(multi)
    return c, [v for v, x in enumerate(cl) if x == c]


def _individualize(cl: list, v: int) -> list:
    out = list(cl)
    out[v] = max(cl) + 1
    return out


def _leaf_map(a: _Colored, b: _Colored, cl: list, cr: list):
    where = {c: w for w, c in enumerate(cr)}
    f = [where[c] for c in cl]
    for v in range(a.n):
        row = b.lookup[f[v]]
        if len(row) != len(a.nbrs[v]):
            return None
        for u, lab in a.nbrs[v]:
            if row.get(f[u]) != lab:
                return None
    return f


def _first_map(a: _Colored, b: _Colored, cl: list, cr: list):
    """First color-respecting isomorphism a -> b in branch order, or None."""
    cell = _target_cell(cl)
    if cell is None:
        return _leaf_map(a, b, cl, cr)
    c, members = cell
    x = members[0]
    for y in (w for w, col in enumerate(cr) if col == c):
        r = _refine_pair(a, b, _individualize(cl, x), _individualize(cr, y))
        if r is not None:
            f = _first_map(a, b, *r)
            if f is not None:
                return f
    return None


def _initial(a: _Colored, vertex_colors: Optional[Sequence[int]]):
    c0 = [0] * a.n if vertex_colors is None else list(vertex_colors)
    return _refine_pair(a, a, c0, c0)[0]


def _colored_group(a: _Colored, cl: list, limit: int) -> np.ndarray:
    cell = _target_cell(cl)
    if cell is None:
        return np.arange(a.n, dtype=np.int64)[None, :]
    _, members = cell
    x = members[0]
    fixed = _refine_pair(a, a, _individualize(cl, x), _individualize(cl, x))[0]
    stab = _colored_group(a, fixed, limit)
    reps = [np.arange(a.n)]
    for y in members[1:]:
        r = _refine_pair(a, a, _individualize(cl, x), _individualize(cl, y))
        if r is None:
            continue
        f = _first_map(a, a, *r)
        if f is not None:
            reps.append(np.asarray(f))
            if len(reps) * len(stab) > limit:
                raise GroupTooLarge(limit)
    return np.concatenate([f[stab] for f in reps])


def _nonidentity(a: _Colored, cl: list):
    """Some nonidentity automorphism of the colored graph, or None."""
    while True:
        cell = _target_cell(cl)
        if cell is None:
            return None
        _, members = cell
        x = members[0]
        for y in members[1:]:
            r = _refine_pair(a, a, _individualize(cl, x), _individualize(cl, y))
            if r is not None:
                f = _first_map(a, a, *r)
                if f is not None:
                    return f
        cl = _refine_pair(a, a, _individualize(cl, x), _individualize(cl, x))[0]


# ---------------------------------------------------------------- public API

def automorphism_array(g: Graph, limit: int = 100_000,
                       vertex_colors: Optional[Sequence[int]] = None,
                       edge_labels: Optional[Sequence[int]] = None) -> np.ndarray:
    """All (color-preserving) automorphisms as rows of an int array, sorted.

    The identity is the lexicographically smallest row, so it comes first.
    """
    a = _Colored(g, edge_labels)
    group = _colored_group(a, _initial(a, vertex_colors), limit)
    if len(group) > limit:
        raise GroupTooLarge(limit)
    order = np.lexsort(group.T[::-1])
    return group[order]


def enumerate_automorphisms(g: Graph, limit: int = 100_000) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in row) for row in automorphism_array(g, limit)]


def is_automorphism(g: Graph, f: Sequence[int]) -> bool:
    if sorted(f) != list(range(g.n)):
        return False
    return all(g.has_edge(f[u], f[v]) for u, v in g.edges)


def preserves(g: Graph, labeling: Labeling, f: Sequence[int]) -> bool:
    if isinstance(labeling, VertexLabeling):
        return all(labeling.labels[f[v]] == labeling.labels[v] for v in range(g.n))
    return all(labeling.labels[g.eid(f[u], f[v])] == labeling.labels[i]
               for i, (u, v) in enumerate(g.edges))


def edge_action(f: Sequence[int], g: Graph) -> tuple[int, ...]:
    """Permutation of canonical edge indices induced by the vertex automorphism f."""
    if not is_automorphism(g, f):
        raise NotAnAutomorphism(f"{list(f)} is not an automorphism of {g!r}")
    return tuple(g.eid(f[u], f[v]) for u, v in g.edges)


def edge_action_array(perms: np.ndarray, g: Graph) -> np.ndarray:
    """Vectorised edge action for a stack of vertex automorphisms."""
    table = np.full((g.n, g.n), -1, dtype=np.int64)
    for i, (u, v) in enumerate(g.edges):
        table[u, v] = table[v, u] = i
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    return table[perms[:, eu], perms[:, ev]]


def preserving_automorphism_raw(g: Graph, vertex_colors: Optional[Sequence[int]] = None,
                                edge_labels: Optional[Sequence[int]] = None):
    """Like :func:`find_preserving_automorphism` but for arbitrary integer colors."""
    a = _Colored(g, edge_labels)
    f = _nonidentity(a, _initial(a, vertex_colors))
    return None if f is None else tuple(f)


def find_preserving_automorphism(g: Graph, labeling: Labeling) -> Optional[tuple[int, ...]]:
    """A nonidentity automorphism preserving ``labeling``, or None if it is distinguishing."""
    if isinstance(labeling, VertexLabeling):
        if len(labeling.labels) != g.n:
            raise ValueError("vertex labeling size does not match the graph")
        return preserving_automorphism_raw(g, vertex_colors=labeling.labels)
    if isinstance(labeling, EdgeLabeling):
        if len(labeling.labels) != g.m:
            raise ValueError("edge labeling size does not match the graph")
        return preserving_automorphism_raw(g, edge_labels=labeling.labels)
    raise TypeError(f"not a labeling: {labeling!r}")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: Graph, h: Graph) -> Optional[tuple[int, ...]]:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return None
    a, b = _Colored(g), _Colored(h)
    r = _refine_pair(a, b, [0] * g.n, [0] * h.n)
    if r is None:
        return None
    f = _first_map(a, b, *r)
    return None if f is None else tuple(f)


def fixed_vertices(g: Graph) -> list[int]:
    """Vertices fixed by every automorphism of g."""
    a = _Colored(g)
    cl = _initial(a, None)
    fixed = []
    for x in range(g.n):
        peers = [y for y in range(g.n) if y != x and cl[y] == cl[x]]
        moved = False
        for y in peers:
            r = _refine_pair(a, a, _individualize(cl, x), _individualize(cl, y))
            if r is not None and _first_map(a, a, *r) is not None:
                moved = True
                break
        if not moved:
            fixed.append(x)
    return fixed


def has_fixed_vertex(g: Graph) -> bool:
    cl = _initial(_Colored(g), None)
    if any(cl.count(c) == 1 for c in set(cl)):
        return True
    return bool(fixed_vertices(g))
