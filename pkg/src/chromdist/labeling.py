"""Edge and vertex labelings and the certificates that vouch for them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .graph import Graph, GraphError, parse_edge_list


@dataclass(frozen=True)
class EdgeLabeling:
    """Labels in ``1..k`` indexed by the graph's canonical edge order."""

    k: int
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.k < 1:
            raise ValueError(f"label count must be positive, got {self.k}")
        bad = [x for x in self.labels if not 1 <= x <= self.k]
        if bad:
            raise ValueError(f"labels {sorted(set(bad))} outside 1..{self.k}")

    kind = "edge"

    def is_proper(self, g: Graph) -> bool:
        _check_size(g.m, self, "edges")
        for v in range(g.n):
            seen = [self.labels[e] for e in g.incident_edges(v)]
            if len(seen) != len(set(seen)):
                return False
        return True


@dataclass(frozen=True)
class VertexLabeling:
    """Labels in ``1..k`` indexed by vertex."""

    k: int
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.k < 1:
            raise ValueError(f"label count must be positive, got {self.k}")
        bad = [x for x in self.labels if not 1 <= x <= self.k]
        if bad:
            raise ValueError(f"labels {sorted(set(bad))} outside 1..{self.k}")

    kind = "vertex"

    def is_proper(self, g: Graph) -> bool:
        _check_size(g.n, self, "vertices")
        return all(self.labels[u] != self.labels[v] for u, v in g.edges)


Labeling = Union[EdgeLabeling, VertexLabeling]


def _check_size(expected: int, lab, what: str):
    if len(lab.labels) != expected:
        raise GraphError(f"labeling has {len(lab.labels)} entries but graph has {expected} {what}")


@dataclass
class LabelingCertificate:
    graph: Graph
    labeling: Labeling
    proper: bool
    distinguishing: bool
    witness: Optional[tuple[int, ...]] = None
    notes: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.labeling.k

    @property
    def kind(self) -> str:
        return self.labeling.kind

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_edge_list(),
            "kind": self.kind,
            "k": self.k,
            "labels": list(self.labeling.labels),
            "proper": self.proper,
            "distinguishing": self.distinguishing,
            "witness": None if self.witness is None else list(self.witness),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict, graph: Optional[Graph] = None) -> "LabelingCertificate":
        g = graph if graph is not None else parse_edge_list(data["graph"])
        kind = data["kind"]
        if kind == "edge":
            lab = EdgeLabeling(data["k"], data["labels"])
        elif kind == "vertex":
            lab = VertexLabeling(data["k"], data["labels"])
        else:
            raise ValueError(f"unknown labeling kind {kind!r}")
        w = data.get("witness")
        return cls(g, lab, bool(data["proper"]), bool(data["distinguishing"]),
                   None if w is None else tuple(w))


def certify(g: Graph, labeling: Labeling) -> LabelingCertificate:
    """Check properness and distinguishing-ness from scratch."""
    from .symmetry import find_preserving_automorphism

    proper = labeling.is_proper(g)
    witness = find_preserving_automorphism(g, labeling)
    return LabelingCertificate(g, labeling, proper, witness is None, witness)


def recheck(cert: LabelingCertificate) -> tuple[bool, list[str]]:
    """Re-verify every claim in ``cert``; returns (ok, list of refuted claims)."""
    from .symmetry import is_automorphism, preserves

    problems = []
    fresh = certify(cert.graph, cert.labeling)
    if fresh.proper != cert.proper:
        problems.append(f"proper claimed {cert.proper}, recomputed {fresh.proper}")
    if fresh.distinguishing != cert.distinguishing:
        problems.append(
            f"distinguishing claimed {cert.distinguishing}, recomputed {fresh.distinguishing}")
    if cert.witness is not None:
        w = cert.witness
        if list(w) == list(range(cert.graph.n)):
            problems.append("witness is the identity")
        elif not (is_automorphism(cert.graph, w) and preserves(cert.graph, cert.labeling, w)):
            problems.append("witness is not a label-preserving automorphism")
    elif not cert.distinguishing:
        problems.append("non-distinguishing certificate without witness")
    return not problems, problems
