"""Functional graphs of the Hessian maps and their structural verifiers."""

from .builders import (
    PointGraph,
    TwistGraph,
    fkl_graph,
    hessian_graph,
    lambda_graph,
    projective_graph,
    psi_curve_graph,
    psi_proj_graph,
    psi_s_graph,
    twist_graph,
)
from .functional import (
    ComponentProfile,
    FunctionalGraph,
    TreeProfile,
    build_graph,
    canonical_tree,
    decompose,
    tree_profile,
)

__all__ = [
    "PointGraph",
    "TwistGraph",
    "fkl_graph",
    "hessian_graph",
    "lambda_graph",
    "projective_graph",
    "psi_curve_graph",
    "psi_proj_graph",
    "psi_s_graph",
    "twist_graph",
    "ComponentProfile",
    "FunctionalGraph",
    "TreeProfile",
    "build_graph",
    "canonical_tree",
    "decompose",
    "tree_profile",
]
