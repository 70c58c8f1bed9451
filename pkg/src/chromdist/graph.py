"""Simple undirected graphs, the named families, and derived graphs.

Vertices are always ``0..n-1``.  Edges are stored as sorted ``(u, v)`` pairs
with ``u < v``; the canonical edge order is lexicographic on that pair and
is what every edge labeling, line graph and certificate indexes into.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graphs, bad family parameters and parse errors."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def eid(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, [0])) == self.n

    def incident_edges(self, v: int) -> list[int]:
        return sorted(self.eid(v, u) for u in self.adj[v])

    def to_edge_list(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines += [f"e {u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def bfs_distances(g: Graph, sources: Iterable[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# ---------------------------------------------------------------- families

class Family(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "kst"
    FRIENDSHIP = "friendship"
    BOOK = "book"
    SYMMETRIC_TREE = "symtree"
    BISYMMETRIC_TREE = "bisymtree"
    PETERSEN = "petersen"
    SUBDIVIDED_STAR = "substar"
    STAR = "star"


_ARITY = {
    Family.PATH: 1, Family.CYCLE: 1, Family.COMPLETE: 1, Family.COMPLETE_BIPARTITE: 2,
    Family.FRIENDSHIP: 1, Family.BOOK: 1, Family.SYMMETRIC_TREE: 2,
    Family.BISYMMETRIC_TREE: 2, Family.PETERSEN: 0, Family.SUBDIVIDED_STAR: 1,
    Family.STAR: 1,
}


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.params) != _ARITY[self.family]:
            raise GraphError(
                f"{self.family.value} takes {_ARITY[self.family]} parameter(s), got {self.params}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse CLI shorthand such as ``path:7``, ``kst:4,3`` or ``petersen``."""
        name, _, rest = text.strip().partition(":")
        try:
            family = Family(name.lower())
        except ValueError:
            raise GraphError(f"unknown family {name!r}") from None
        try:
            params = tuple(int(x) for x in rest.split(",")) if rest else ()
        except ValueError:
            raise GraphError(f"bad parameters in {text!r}") from None
        return cls(family, params)

    def __str__(self):
        if not self.params:
            return self.family.value
        return f"{self.family.value}:{','.join(map(str, self.params))}"


def _need(cond: bool, msg: str):
    if not cond:
        raise GraphError(msg)


def path(n: int) -> Graph:
    _need(n >= 1, f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _need(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t}: part X is ``0..s-1``, part Y is ``s..s+t-1``."""
    _need(s >= 1 and t >= 1, f"complete bipartite needs s, t >= 1, got {(s, t)}")
    return Graph(s + t, [(x, s + y) for x in range(s) for y in range(t)])


def star(n: int) -> Graph:
    """K_{1,n} with center 0."""
    _need(n >= 1, f"star needs n >= 1, got {n}")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def friendship(n: int) -> Graph:
    """n triangles sharing vertex 0; triangle i uses vertices 2i+1, 2i+2."""
    _need(n >= 2, f"friendship graph needs n >= 2, got {n}")
    edges = []
    for i in range(n):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * n + 1, edges)


def book(n: int) -> Graph:
    """K_{1,n} x P_2.

    Vertex layout: v0 = 0, v_i = i, w0 = n+1, w_i = n+1+i for 1 <= i <= n, so
    page i is the 4-cycle v0 v_i w_i w0.
    """
    _need(n >= 2, f"book graph needs n >= 2, got {n}")
    w0 = n + 1
    edges = [(0, w0)]
    for i in range(1, n + 1):
        edges += [(0, i), (i, w0 + i), (w0, w0 + i)]
    return Graph(2 * n + 2, edges)


def symmetric_tree(h: int, d: int) -> Graph:
    """T_{h,d}: root of degree d, every internal vertex of degree d, leaves at depth h."""
    _need(h >= 1 and d >= 2, f"symmetric tree needs h >= 1, d >= 2, got {(h, d)}")
    edges = []
    frontier, nxt = [0], 1
    for depth in range(h):
        new = []
        for v in frontier:
            for _ in range(d if depth == 0 else d - 1):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return Graph(nxt, edges)


def bisymmetric_tree(h: int, d: int) -> Graph:
    """T''_{h,d}: central edge (0, 1), leaves at distance h from it, internal degree d."""
    _need(h >= 1 and d >= 2, f"bisymmetric tree needs h >= 1, d >= 2, got {(h, d)}")
    edges = [(0, 1)]
    frontier, nxt = [0, 1], 2
    for _ in range(h):
        new = []
        for v in frontier:
            for _ in range(d - 1):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return Graph(nxt, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def subdivided_star(n: int) -> Graph:
    """K_{1,n} with every edge replaced by a path of length three.

    Branch i (0-based) is center 0 -> 3i+1 -> 3i+2 -> 3i+3 (leaf).
    """
    _need(n >= 2, f"subdivided star needs n >= 2, got {n}")
    edges = []
    for i in range(n):
        a = 3 * i + 1
        edges += [(0, a), (a, a + 1), (a + 1, a + 2)]
    return Graph(3 * n + 1, edges)


_BUILDERS = {
    Family.PATH: path, Family.CYCLE: cycle, Family.COMPLETE: complete,
    Family.COMPLETE_BIPARTITE: complete_bipartite, Family.FRIENDSHIP: friendship,
    Family.BOOK: book, Family.SYMMETRIC_TREE: symmetric_tree,
    Family.BISYMMETRIC_TREE: bisymmetric_tree, Family.PETERSEN: petersen,
    Family.SUBDIVIDED_STAR: subdivided_star, Family.STAR: star,
}


def make_family(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    return _BUILDERS[spec.family](*spec.params)


# ---------------------------------------------------------------- products

def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.n
    return Graph(g.n + h.n, list(g.edges) + [(u + off, v + off) for u, v in h.edges])


def join(g: Graph, h: Graph) -> Graph:
    """G + H; g keeps 0..|V(g)|-1, h is offset by |V(g)|."""
    off = g.n
    cross = [(u, off + w) for u in range(g.n) for w in range(h.n)]
    return Graph(g.n + h.n, list(disjoint_union(g, h).edges) + cross)


def corona(g: Graph, h: Graph) -> Graph:
    """G o H; copy i of h occupies g.n + i*h.n .. g.n + (i+1)*h.n - 1."""
    edges = list(g.edges)
    for i in range(g.n):
        base = g.n + i * h.n
        edges += [(base + a, base + b) for a, b in h.edges]
        edges += [(i, base + w) for w in range(h.n)]
    return Graph(g.n * (1 + h.n), edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex (u, a) is numbered u * h.n + a."""
    def vid(u, a):
        return u * h.n + a
    edges = [(vid(u, a), vid(u, b)) for u in range(g.n) for a, b in h.edges]
    edges += [(vid(u, a), vid(v, a)) for u, v in g.edges for a in range(h.n)]
    return Graph(g.n * h.n, edges)


def line_graph(g: Graph) -> Graph:
    """Vertex i of L(g) is ``g.edges[i]``."""
    if g.m == 0:
        raise GraphError("line graph of an edgeless graph is empty")
    edges = []
    for v in range(g.n):
        inc = g.incident_edges(v)
        edges += combinations(inc, 2)
    return Graph(g.m, edges)


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


# ---------------------------------------------------------------- trees

def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


def _leaves_and_internal_ok(g: Graph, dist: dict[int, int]) -> bool:
    deg = g.degrees
    leaf_dists = {dist[v] for v in range(g.n) if deg[v] == 1}
    internal = {deg[v] for v in range(g.n) if deg[v] != 1}
    return len(leaf_dists) == 1 and len(internal) == 1 and min(internal) >= 2


def is_symmetric_tree(g: Graph) -> bool:
    if not is_tree(g) or g.n < 3:
        return False
    return any(_leaves_and_internal_ok(g, bfs_distances(g, [c]))
               for c in range(g.n) if g.degree(c) >= 2)


def is_bisymmetric_tree(g: Graph) -> bool:
    if not is_tree(g) or g.n < 2:
        return False
    if g.n == 2:
        return False
    return any(_leaves_and_internal_ok(g, bfs_distances(g, [u, v])) for u, v in g.edges
               if g.degree(u) >= 2 and g.degree(v) >= 2)


# ---------------------------------------------------------------- edge-list IO

_P_LINE = re.compile(r"^p\s+(\d+)\s+(\d+)\s*$")
_E_LINE = re.compile(r"^e\s+(\d+)\s+(\d+)\s*$")


def parse_edge_list(text: str) -> Graph:
    """Parse the ``p <n> <m>`` / ``e <u> <v>`` format; errors carry line numbers."""
    lines = text.splitlines()
    header = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if header is None:
            mt = _P_LINE.match(line)
            if not mt:
                raise GraphError(f"line {lineno}: expected 'p <vertex_count> <edge_count>'")
            header = (int(mt.group(1)), int(mt.group(2)))
            header_line = lineno
            continue
        mt = _E_LINE.match(line)
        if not mt:
            raise GraphError(f"line {lineno}: expected 'e <u> <v>', got {raw!r}")
        u, v = int(mt.group(1)), int(mt.group(2))
        if u >= header[0] or v >= header[0]:
            raise GraphError(f"line {lineno}: vertex out of range in {raw!r}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop {raw!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate of the edge on line {seen[key]}")
        seen[key] = lineno
        edges.append((u, v))
    if header is None:
        raise GraphError("line 1: missing 'p' header")
    if len(edges) != header[1]:
        raise GraphError(f"line {header_line}: header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def load_graph(source: str) -> Graph:
    """A family shorthand or a path to an edge-list file."""
    import os
    if os.path.exists(source):
        with open(source) as fh:
            return parse_edge_list(fh.read())
    return make_family(source)


# ---------------------------------------------------------------- Sabidussi exceptions

class SabidussiException(enum.Enum):
    NONE = "None"
    P2 = "P2"
    Q = "Q"
    LQ = "LQ"


# Q is the paw (a triangle with one pendant edge); L(Q) is K_4 minus an edge.
# These are the pair for which the edge action Aut(G) -> Aut(L(G)) fails to be
# onto and whose line graphs are each other's companion.
PAW = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
DIAMOND = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def detect_sabidussi_exception(g: Graph) -> SabidussiException:
    from .symmetry import is_isomorphic

    if g.n == 2 and g.m == 1:
        return SabidussiException.P2
    if is_isomorphic(g, PAW):
        return SabidussiException.Q
    if is_isomorphic(g, DIAMOND):
        return SabidussiException.LQ
    return SabidussiException.NONE
