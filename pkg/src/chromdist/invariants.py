"""Exact values of the coloring and symmetry-breaking parameters."""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError
from .labeling import EdgeLabeling, LabelingCertificate, VertexLabeling, certify
from .search import SearchTimeout, find_labeling, item_automorphisms
from .symmetry import has_fixed_vertex

log = logging.getLogger(__name__)

AUT_LIMIT = 50_000


class Parameter(enum.Enum):
    CHROMATIC_INDEX = "chi-prime"
    CHROMATIC_NUMBER = "chi"
    DISTINGUISHING_NUMBER = "d"
    DISTINGUISHING_INDEX = "d-prime"
    DISTINGUISHING_CHROMATIC_NUMBER = "chi-d"
    DISTINGUISHING_CHROMATIC_INDEX = "chi-prime-d"


class Method(enum.Enum):
    SEARCH = "search"
    CLOSED_FORM = "closed-form"
    CONSTRUCTION = "construction"
    BOUNDS = "bounds"


@dataclass
class ParameterResult:
    parameter: Parameter
    lo: int
    hi: int
    method: Method
    certificate: Optional[LabelingCertificate] = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if self.method is Method.SEARCH and self.certificate is None:
            raise ValueError("search results must carry a certificate")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Optional[int]:
        return self.lo if self.exact else None

    def to_json(self) -> dict:
        return {
            "parameter": self.parameter.value,
            "value": self.value,
            "interval": [self.lo, self.hi],
            "method": self.method.value,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "notes": list(self.notes),
        }


class DisconnectedGraph(GraphError):
    pass


def _need_connected(g: Graph):
    if not g.is_connected():
        raise DisconnectedGraph("graph is disconnected; only connected inputs are supported")


def _make_cert(g: Graph, kind: str, k: int, labels) -> LabelingCertificate:
    lab = EdgeLabeling(k, labels) if kind == "edge" else VertexLabeling(k, labels)
    return certify(g, lab)


def _scan(g: Graph, param: Parameter, kind: str, lo: int, hi: int, *, proper: bool,
          distinguishing: bool, budget: Optional[float], notes: list[str],
          aut_limit: int = AUT_LIMIT, perms=None) -> ParameterResult:
    """Smallest feasible k in lo..hi, upward; degrade to an interval on timeout."""
    if distinguishing and perms is None:
        perms = item_automorphisms(g, kind, aut_limit)
        if perms is None:
            notes.append(f"automorphism group exceeds {aut_limit}; direct distinguishing tests")
    for k in range(lo, hi + 1):
        try:
            labels = find_labeling(g, kind, k, proper=proper, distinguishing=distinguishing,
                                   perms=perms, aut_limit=aut_limit, budget=budget)
        except SearchTimeout:
            notes.append(f"search at k={k} ran out of budget")
            return ParameterResult(param, k, hi, Method.BOUNDS, notes=notes)
        if labels is not None:
            return ParameterResult(param, k, k, Method.SEARCH, _make_cert(g, kind, k, labels), notes)
    raise AssertionError(f"{param.value}: no feasible k in [{lo}, {hi}] for {g!r}")


# ---------------------------------------------------------------- class-one predicates

def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def max_degree_vertices_independent(g: Graph) -> bool:
    d = g.max_degree
    return not any(g.degree(u) == d and g.degree(v) == d for u, v in g.edges)


def class_one_certain(g: Graph) -> Optional[str]:
    if is_bipartite(g):
        return "bipartite"
    if max_degree_vertices_independent(g):
        return "no two maximum-degree vertices adjacent"
    return None


def _overfull(g: Graph, k: int) -> bool:
    """No proper k-edge-labeling can exist: some vertex needs more, or too many edges."""
    return g.max_degree > k or g.m > k * (g.n // 2)


# ---------------------------------------------------------------- parameters

def chromatic_index(g: Graph, budget: Optional[float] = None) -> ParameterResult:
    if g.m == 0:
        raise GraphError("chromatic index needs at least one edge")
    delta = g.max_degree
    notes = []
    reason = class_one_certain(g)
    if reason:
        notes.append(f"class one by shortcut: {reason}")
    for k in (delta, delta + 1):
        if k == delta and _overfull(g, k):
            notes.append(f"no proper {k}-edge-labeling: overfull")
            continue
        try:
            labels = find_labeling(g, "edge", k, proper=True, distinguishing=False, budget=budget)
        except SearchTimeout:
            notes.append(f"search at k={k} ran out of budget")
            return ParameterResult(Parameter.CHROMATIC_INDEX, k, delta + 1, Method.BOUNDS, notes=notes)
        if labels is not None:
            return ParameterResult(Parameter.CHROMATIC_INDEX, k, k, Method.SEARCH,
                                   _make_cert(g, "edge", k, labels), notes)
        if reason:
            raise AssertionError(f"class-one shortcut ({reason}) fired but no {k}-labeling found")
    raise AssertionError("no proper (max degree + 1)-edge-labeling; contradicts Vizing")


def greedy_clique_size(g: Graph) -> int:
    best = 1 if g.n else 0
    for v in range(g.n):
        clique = [v]
        for u in sorted(g.adj[v], key=lambda x: -g.degree(x)):
            if all(g.has_edge(u, w) for w in clique):
                clique.append(u)
        best = max(best, len(clique))
    return best


def chromatic_number(g: Graph, budget: Optional[float] = None) -> ParameterResult:
    if g.n == 0:
        return ParameterResult(Parameter.CHROMATIC_NUMBER, 0, 0, Method.CLOSED_FORM)
    return _scan(g, Parameter.CHROMATIC_NUMBER, "vertex", greedy_clique_size(g), g.n,
                 proper=True, distinguishing=False, budget=budget, notes=[])


def distinguishing_index(g: Graph, budget: Optional[float] = None,
                         aut_limit: int = AUT_LIMIT) -> ParameterResult:
    _need_connected(g)
    if g.m < 2:
        raise GraphError("distinguishing index needs a connected graph with at least two edges")
    return _scan(g, Parameter.DISTINGUISHING_INDEX, "edge", 1, g.m, proper=False,
                 distinguishing=True, budget=budget, notes=[], aut_limit=aut_limit)


def distinguishing_number(g: Graph, budget: Optional[float] = None,
                          aut_limit: int = AUT_LIMIT) -> ParameterResult:
    _need_connected(g)
    if g.n == 0:
        raise GraphError("empty graph")
    return _scan(g, Parameter.DISTINGUISHING_NUMBER, "vertex", 1, g.n, proper=False,
                 distinguishing=True, budget=budget, notes=[], aut_limit=aut_limit)


def distinguishing_chromatic_index(g: Graph, budget: Optional[float] = None,
                                   aut_limit: int = AUT_LIMIT,
                                   chi_prime: Optional[ParameterResult] = None,
                                   d_prime: Optional[ParameterResult] = None,
                                   fixed_vertex_rule: bool = True) -> ParameterResult:
    _need_connected(g)
    if g.m < 2:
        raise GraphError("distinguishing chromatic index needs at least two edges")
    param = Parameter.DISTINGUISHING_CHROMATIC_INDEX
    delta = g.max_degree
    notes = []
    cp = chi_prime or chromatic_index(g, budget)

    if fixed_vertex_rule and cp.exact and cp.value == delta and has_fixed_vertex(g):
        # class one with a vertex fixed by every automorphism: every proper
        # delta-labeling is distinguishing
        cert = cp.certificate
        if cert is not None and cert.distinguishing:
            notes.append("class one with a fixed vertex: value is max degree")
            return ParameterResult(param, delta, delta, Method.SEARCH, cert, notes)
        labels = find_labeling(g, "edge", delta, proper=True, distinguishing=True,
                               aut_limit=aut_limit, budget=budget)
        if labels is None:
            raise AssertionError("fixed-vertex rule predicted a distinguishing labeling; none found")
        notes.append("class one with a fixed vertex: value is max degree")
        return ParameterResult(param, delta, delta, Method.SEARCH,
                               _make_cert(g, "edge", delta, labels), notes)

    dp = d_prime or distinguishing_index(g, budget, aut_limit)
    if not (cp.exact and dp.exact):
        notes.append("lower bound taken from interval results")
    lo = max(cp.lo, dp.lo)
    while _overfull(g, lo):
        lo += 1
    return _scan(g, param, "edge", lo, delta + 2, proper=True, distinguishing=True,
                 budget=budget, notes=notes, aut_limit=aut_limit)


def distinguishing_chromatic_number(g: Graph, budget: Optional[float] = None,
                                    aut_limit: int = AUT_LIMIT) -> ParameterResult:
    _need_connected(g)
    if g.n == 0:
        raise GraphError("empty graph")
    lo = chromatic_number(g, budget).lo
    return _scan(g, Parameter.DISTINGUISHING_CHROMATIC_NUMBER, "vertex", lo, g.n, proper=True,
                 distinguishing=True, budget=budget, notes=[], aut_limit=aut_limit)


def feasible(g: Graph, kind: str, k: int, *, proper: bool, aut_limit: int = AUT_LIMIT) -> bool:
    """Does a (proper) distinguishing k-labeling exist?"""
    return find_labeling(g, kind, k, proper=proper, distinguishing=True,
                         aut_limit=aut_limit) is not None


COMPUTE = {
    Parameter.CHROMATIC_INDEX: chromatic_index,
    Parameter.CHROMATIC_NUMBER: chromatic_number,
    Parameter.DISTINGUISHING_INDEX: distinguishing_index,
    Parameter.DISTINGUISHING_NUMBER: distinguishing_number,
    Parameter.DISTINGUISHING_CHROMATIC_INDEX: distinguishing_chromatic_index,
    Parameter.DISTINGUISHING_CHROMATIC_NUMBER: distinguishing_chromatic_number,
}


def compute(g: Graph, param: Parameter | str, budget: Optional[float] = None) -> ParameterResult:
    if isinstance(param, str):
        param = Parameter(param)
    start = time.monotonic()
    res = COMPUTE[param](g, budget=budget)
    log.debug("%s on %r -> [%d, %d] in %.2fs", param.value, g, res.lo, res.hi,
              time.monotonic() - start)
    return res
