"""Exact solver and verifier for polyhedral convex set optimization problems."""

from .exact import DimensionError, rat, rat_add, rat_cmp, rat_mul, rat_str
from .lp import LinearProgram, LpOutcome, Status, certify, lp_solve
from .polyhedra import (
    Cone,
    HRep,
    PreconditionError,
    VRep,
    c_minimal_in_family,
    contains,
    equal,
    h_to_v,
    lineality_space,
    minkowski_and_hulls,
    project,
    recession_cone,
    set_dominates,
    v_to_h,
)
from .setopt import (
    ExistenceFlags,
    Problem,
    SolutionPair,
    SolveResult,
    SolveStatus,
    build_lp,
    evaluate,
    existence_flags,
    from_graph,
    from_prep,
    homogeneous,
    is_bounded,
    is_feasible,
    is_minimizing_direction,
    is_minimizing_point,
    lower_bound,
    prop4,
    solve,
    upper_image,
    verify,
)
from .vlp import (
    VlpProblem,
    condition3,
    cor2_exists,
    lineality_condition,
    to_setopt,
    vlp_solution_exists,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "DimensionError",
    "ExistenceFlags",
    "HRep",
    "LinearProgram",
    "LpOutcome",
    "PreconditionError",
    "Problem",
    "SolutionPair",
    "SolveResult",
    "SolveStatus",
    "Status",
    "VRep",
    "VlpProblem",
    "build_lp",
    "c_minimal_in_family",
    "certify",
    "condition3",
    "contains",
    "cor2_exists",
    "equal",
    "evaluate",
    "existence_flags",
    "from_graph",
    "from_prep",
    "h_to_v",
    "homogeneous",
    "is_bounded",
    "is_feasible",
    "is_minimizing_direction",
    "is_minimizing_point",
    "lineality_condition",
    "lineality_space",
    "lower_bound",
    "lp_solve",
    "minkowski_and_hulls",
    "project",
    "prop4",
    "rat",
    "rat_add",
    "rat_cmp",
    "rat_mul",
    "rat_str",
    "recession_cone",
    "set_dominates",
    "solve",
    "to_setopt",
    "upper_image",
    "v_to_h",
    "verify",
    "vlp_solution_exists",
]
