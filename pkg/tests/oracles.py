"""Brute-force reference implementations, independent of the package's search code.

Everything here enumerates: all vertex permutations (or networkx's matcher
for larger graphs) for automorphisms, all label tuples for parameters.
Only suitable for tiny graphs.
"""

import itertools

import networkx as nx
import numpy as np


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def automorphisms(g):
    """Every automorphism as a tuple, brute force for n <= 8, networkx beyond."""
    if g.n <= 8:
        es = set(g.edges)
        out = []
        for f in itertools.permutations(range(g.n)):
            if all(tuple(sorted((f[u], f[v]))) in es for u, v in g.edges):
                out.append(f)
        return out
    h = to_nx(g)
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h)
    return [tuple(m[v] for v in range(g.n)) for m in gm.isomorphisms_iter()]


def edge_perms(g, autos):
    idx = {e: i for i, e in enumerate(g.edges)}
    return [tuple(idx[tuple(sorted((f[u], f[v])))] for u, v in g.edges) for f in autos]


def _nonidentity(perms, size):
    ident = tuple(range(size))
    return np.array([p for p in perms if tuple(p) != ident], dtype=np.int64).reshape(-1, size)


def _proper_mask(labs, conflicts):
    ok = np.ones(len(labs), dtype=bool)
    for i, j in conflicts:
        ok &= labs[:, i] != labs[:, j]
    return ok


def _distinguishing_mask(labs, perms):
    ok = np.ones(len(labs), dtype=bool)
    for p in perms:
        ok &= ~(labs[:, p] == labs).all(axis=1)
    return ok


def _all_labelings(size, k, chunk=200_000):
    it = itertools.product(range(k), repeat=size)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int8).reshape(-1, size)


def _exists(size, k, conflicts, perms, proper, distinguishing):
    for labs in _all_labelings(size, k):
        mask = np.ones(len(labs), dtype=bool)
        if proper:
            mask &= _proper_mask(labs, conflicts)
        if distinguishing:
            mask &= _distinguishing_mask(labs, perms)
        if mask.any():
            return True
    return False


def edge_conflicts(g):
    return [(i, j) for i, j in itertools.combinations(range(g.m), 2)
            if set(g.edges[i]) & set(g.edges[j])]


def vertex_conflicts(g):
    return list(g.edges)


def smallest(g, kind, proper, distinguishing, k_max=None):
    size = g.m if kind == "edge" else g.n
    conflicts = edge_conflicts(g) if kind == "edge" else vertex_conflicts(g)
    autos = automorphisms(g)
    perms = _nonidentity(edge_perms(g, autos) if kind == "edge" else autos, size)
    for k in range(1, (k_max or size + 2) + 1):
        if _exists(size, k, conflicts, perms, proper, distinguishing):
            return k
    return None


def chromatic_index(g):
    return smallest(g, "edge", True, False)


def chromatic_number(g):
    return smallest(g, "vertex", True, False)


def distinguishing_index(g):
    return smallest(g, "edge", False, True)


def distinguishing_number(g):
    return smallest(g, "vertex", False, True)


def distinguishing_chromatic_index(g):
    return smallest(g, "edge", True, True)


def distinguishing_chromatic_number(g):
    return smallest(g, "vertex", True, True)


def count_labelings(g, kind, k, proper, distinguishing):
    size = g.m if kind == "edge" else g.n
    conflicts = edge_conflicts(g) if kind == "edge" else vertex_conflicts(g)
    autos = automorphisms(g)
    perms = _nonidentity(edge_perms(g, autos) if kind == "edge" else autos, size)
    total = 0
    for labs in _all_labelings(size, k):
        mask = np.ones(len(labs), dtype=bool)
        if proper:
            mask &= _proper_mask(labs, conflicts)
        if distinguishing:
            mask &= _distinguishing_mask(labs, perms)
        total += int(mask.sum())
    return total


def preserving_automorphisms(g, labels, kind):
    """Nonidentity automorphisms preserving an item labeling."""
    autos = automorphisms(g)
    out = []
    for f in autos:
        if f == tuple(range(g.n)):
            continue
        if kind == "vertex":
            ok = all(labels[f[v]] == labels[v] for v in range(g.n))
        else:
            p = edge_perms(g, [f])[0]
            ok = all(labels[p[i]] == labels[i] for i in range(g.m))
        if ok:
            out.append(f)
    return out


def fixed_vertices(g):
    autos = automorphisms(g)
    return [v for v in range(g.n) if all(f[v] == v for f in autos)]
