"""Exact workbench for robust maximum flows, static and over time.

An adversary removes (static) or delays (dynamic) up to ``gamma`` arcs after
the flow is fixed.  The library builds the corresponding linear programs over
exact rationals, solves them with a built-in simplex, and cross-checks every
optimum against an LP-free scenario-enumeration evaluator.
"""

from .lp import (
    KERNEL,
    LexSolution,
    LinearProgram,
    LpError,
    LpSolution,
    dump_lp,
    lexicographic_solve,
    solve_lp,
)
from .maxflow import nominal_max_flow, path_decompose
from .network import (
    Arc,
    GuardExceeded,
    Network,
    NetworkError,
    Path,
    PathCatalog,
    ScenarioSet,
    ValidationReport,
    enumerate_scenarios,
    enumerate_st_paths,
    enumerate_subpaths,
    scenario_count,
    validate_network,
)
from .rational import (
    BACKEND,
    ONE,
    ZERO,
    as_fraction,
    format_rational,
    parse_rational,
    rat,
)
from .static_models import (
    STATIC_MODELS,
    CompactGamma1Solution,
    InfeasibleFlowError,
    RobustReport,
    StaticFlow,
    Violation,
    build_am_lp,
    build_gamma1_compact_lp,
    build_gm_lp,
    build_pm_lp,
    decompose_gamma1_solution,
    evaluate_static,
    extract_gamma1_solution,
    prune_low_indegree,
    solve_static,
)
from .dynamic_models import (
    DYNAMIC_MODELS,
    DamDualSolution,
    DynamicFlow,
    DynamicInstance,
    DynamicRobustReport,
    build_dam_compact_lp,
    build_dam_lp,
    build_dgm_lp,
    build_dpm_lp,
    build_tr_lp,
    embed_static,
    evaluate_dynamic,
    extract_dam_dual,
    nominal_dynamic_max_flow,
    path_delay,
    solve_dynamic,
    validate_dynamic_instance,
)
from .instances import (
    brute_force_partition,
    gen_bottleneck,
    gen_fan,
    gen_partition,
    gen_por_dynamic,
    gen_por_static,
    gen_random,
    gen_ti_gap,
    gen_two_hop,
    partition_multisets,
    split_capacities,
)
from .serialize import (
    compare_to_csv,
    dumps,
    flow_from_json,
    flow_to_json,
    instance_from_json,
    instance_to_json,
    rational_from_json,
    rational_to_json,
    report_to_json,
    result_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BACKEND",
    "CompactGamma1Solution",
    "DYNAMIC_MODELS",
    "DamDualSolution",
    "DynamicFlow",
    "DynamicInstance",
    "DynamicRobustReport",
    "GuardExceeded",
    "InfeasibleFlowError",
    "KERNEL",
    "LexSolution",
    "LinearProgram",
    "LpError",
    "LpSolution",
    "Network",
    "NetworkError",
    "ONE",
    "Path",
    "PathCatalog",
    "RobustReport",
    "STATIC_MODELS",
    "ScenarioSet",
    "StaticFlow",
    "ValidationReport",
    "Violation",
    "ZERO",
    "as_fraction",
    "brute_force_partition",
    "build_am_lp",
    "build_dam_compact_lp",
    "build_dam_lp",
    "build_dgm_lp",
    "build_dpm_lp",
    "build_gamma1_compact_lp",
    "build_gm_lp",
    "build_pm_lp",
    "build_tr_lp",
    "compare_to_csv",
    "decompose_gamma1_solution",
    "dump_lp",
    "dumps",
    "embed_static",
    "enumerate_scenarios",
    "enumerate_st_paths",
    "enumerate_subpaths",
    "evaluate_dynamic",
    "evaluate_static",
    "extract_dam_dual",
    "extract_gamma1_solution",
    "flow_from_json",
    "flow_to_json",
    "format_rational",
    "gen_bottleneck",
    "gen_fan",
    "gen_partition",
    "gen_por_dynamic",
    "gen_por_static",
    "gen_random",
    "gen_ti_gap",
    "gen_two_hop",
    "instance_from_json",
    "instance_to_json",
    "lexicographic_solve",
    "nominal_dynamic_max_flow",
    "nominal_max_flow",
    "parse_rational",
    "partition_multisets",
    "path_decompose",
    "path_delay",
    "prune_low_indegree",
    "rat",
    "rational_from_json",
    "rational_to_json",
    "report_to_json",
    "result_to_json",
    "scenario_count",
    "solve_dynamic",
    "solve_lp",
    "solve_static",
    "split_capacities",
    "validate_dynamic_instance",
    "validate_network",
]
