"""Reconstruction-algebra quivers of rational surface singularities.

Three independent routes to the same quiver: intersection-theoretic count
formulas on the labelled dual graph (:mod:`reconalg.quiver`), combinatorial
rules on the diagram (:mod:`reconalg.rules`), and the knitting recursion on
Auslander-Reiten quivers (:mod:`reconalg.knitting`), with a catalog of all
finite small subgroups of GL(2,C) (:mod:`reconalg.groups`) tying them
together.
"""

from .dualgraph import (
    DualGraph,
    GraphInputError,
    InvalidGraphError,
    ValidationReport,
    canonical_cycle,
    embedding_dimension,
    fundamental_cycle,
    is_minimal,
    pairing,
    rationality_identity_check,
    validate_graph,
)
from .groups import GroupId, GroupParamError, dual_graph, expected_quiver, jh_expand, parse_group
from .knitting import TranslationQuiver, build_I_ar_quiver, cross_check, grid_trace, knit_counts
from .quiver import (
    STAR,
    ExtTable,
    ReconQuiver,
    build_quiver,
    emit_dot,
    ext_table,
    global_dimension,
    projective_dimensions,
)
from .rules import ZfClass, apply_rules, classify_zf, verify_against_geometric

__version__ = "0.1.0"

__all__ = [
    "DualGraph",
    "ExtTable",
    "GraphInputError",
    "GroupId",
    "GroupParamError",
    "InvalidGraphError",
    "ReconQuiver",
    "STAR",
    "TranslationQuiver",
    "ValidationReport",
    "ZfClass",
    "apply_rules",
    "build_I_ar_quiver",
    "build_quiver",
    "canonical_cycle",
    "classify_zf",
    "cross_check",
    "dual_graph",
    "emit_dot",
    "embedding_dimension",
    "expected_quiver",
    "ext_table",
    "fundamental_cycle",
    "global_dimension",
    "grid_trace",
    "is_minimal",
    "jh_expand",
    "knit_counts",
    "pairing",
    "parse_group",
    "projective_dimensions",
    "rationality_identity_check",
    "validate_graph",
    "verify_against_geometric",
]
