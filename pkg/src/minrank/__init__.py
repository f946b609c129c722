"""Exact toolkit for minimal-rank Dynkin foldings and their orbit graphs."""

from .root_system import (
    DynkinDiagram,
    Root,
    RootSystem,
    build_dynkin,
    build_root_system,
    disjoint_union,
    is_orthogonal,
    pairing,
    reflect,
)
from .weyl import (
    BudgetExceededError,
    WeylElement,
    WeylGroup,
    generate_weyl,
    length,
    length_poincare,
    min_coset_reps,
    subgroup_closure,
)
from .folding import (
    ColoredDynkin,
    FoldingInvolution,
    MinimalRankPair,
    Rank2Row,
    RestrictionData,
    ValidationReport,
    classification_to_json,
    classify,
    decompose,
    embed_weyl,
    folded_simple_system,
    pair_to_json,
    rank2_table,
    restriction_map,
    validate_candidate,
)
from .orbits import (
    OrbitGraph,
    OrbitVertex,
    VerifyReport,
    bruhat_leq,
    build_graph,
    closed_orbit,
    graph_to_dot,
    graph_to_json,
    knop_action,
    orbit_poincare,
    orbit_set,
    poincare_triple,
    report_to_json,
    verify_pair,
)

__all__ = [
    "BudgetExceededError",
    "ColoredDynkin",
    "DynkinDiagram",
    "FoldingInvolution",
    "MinimalRankPair",
    "OrbitGraph",
    "OrbitVertex",
    "Rank2Row",
    "RestrictionData",
    "Root",
    "RootSystem",
    "ValidationReport",
    "VerifyReport",
    "WeylElement",
    "WeylGroup",
    "bruhat_leq",
    "build_dynkin",
    "build_graph",
    "build_root_system",
    "classification_to_json",
    "classify",
    "closed_orbit",
    "decompose",
    "disjoint_union",
    "embed_weyl",
    "folded_simple_system",
    "generate_weyl",
    "graph_to_dot",
    "graph_to_json",
    "is_orthogonal",
    "knop_action",
    "length",
    "length_poincare",
    "min_coset_reps",
    "orbit_poincare",
    "orbit_set",
    "pair_to_json",
    "pairing",
    "poincare_triple",
    "rank2_table",
    "reflect",
    "report_to_json",
    "restriction_map",
    "subgroup_closure",
    "validate_candidate",
    "verify_pair",
]
