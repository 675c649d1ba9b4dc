"""Exact solver for the Load Coloring Problem via kernelization and treewidth DP."""
from .graph import (
    Color,
    EvaluationError,
    Graph,
    GraphError,
    LCPError,
    LoadProfile,
    ParseError,
    TwoColoring,
    deg_in_set,
    delete_vertices,
    evaluate_coloring,
)
from .kernel import (
    KernelTrace,
    Matching,
    PreconditionError,
    apply_rule1,
    apply_rule2,
    claim_a_witness,
    decide_by_size,
    find_matching,
    kernelize,
    lemma1_witness,
)
from .treedecomp import (
    InvalidDecompositionError,
    NiceTreeDecomposition,
    TreeDecomposition,
    WidthOrColoring,
    bounded_width_or_coloring,
    check_nice,
    emit_td,
    make_nice,
    parse_td,
    validate,
    width,
)
from .dp import (
    DPTable,
    SolveResult,
    dp_forget,
    dp_introduce,
    dp_join,
    dp_leaf,
    optimize,
    run_dp,
    solve_decision,
    solve_klcp,
    solve_optimize,
)
from .oracle import OracleCapError, brute_force_mu
from .instances import ResultRecord, emit_graph, generate, parse_graph

__version__ = "0.1.0"
