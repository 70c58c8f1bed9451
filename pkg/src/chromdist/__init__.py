"""Exact distinguishing chromatic index, distinguishing index and relatives for small graphs."""

from .graph import Family, FamilySpec, Graph, GraphError, load_graph, make_family, parse_edge_list
from .invariants import Method, Parameter, ParameterResult, compute
from .labeling import EdgeLabeling, LabelingCertificate, VertexLabeling, certify, recheck
from .symmetry import automorphism_array, enumerate_automorphisms, find_preserving_automorphism

__all__ = [
    "Family", "FamilySpec", "Graph", "GraphError", "load_graph", "make_family", "parse_edge_list",
    "Method", "Parameter", "ParameterResult", "compute",
    "EdgeLabeling", "LabelingCertificate", "VertexLabeling", "certify", "recheck",
    "automorphism_array", "enumerate_automorphisms", "find_preserving_automorphism",
]
