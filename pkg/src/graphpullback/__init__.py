"""Admissible graph decompositions and the pullbacks of path algebras they induce."""

from .decomposition import (
    AdmissibilityReport,
    Decomposition,
    check_admissible,
    enumerate_admissible,
    verify_lemma_complement,
    verify_lemma_intersection,
)
from .graph import Graph, Path, intersection, is_subgraph, quotient_graph, union
from .leavitt import Element, Monomial, P, S, is_zero, normal_form, parse_element
from .morphisms import AlgebraHom, apply_hom, quotient_hom
from .pullback import PullbackSquare, TheoremReport, build_square, pullback_lift, verify_theorem

__all__ = [
    "AdmissibilityReport", "AlgebraHom", "Decomposition", "Element", "Graph", "Monomial",
    "P", "Path", "PullbackSquare", "S", "TheoremReport", "apply_hom", "build_square",
    "check_admissible", "enumerate_admissible", "intersection", "is_subgraph", "is_zero",
    "normal_form", "parse_element", "pullback_lift", "quotient_graph", "quotient_hom",
    "union", "verify_lemma_complement", "verify_lemma_intersection", "verify_theorem",
]
