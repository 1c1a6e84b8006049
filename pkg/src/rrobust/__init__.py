"""Exact maximum r-robustness of simple digraphs.

Two interchangeable engines: an exhaustive search over pairs of disjoint
vertex subsets (the ground truth) and a mixed-integer linear program
solved by a built-in branch-and-bound/simplex stack.  Seeded random-graph
generators and a benchmark harness compare the two.
"""

from .graph import (
    MAX_NODES,
    Digraph,
    GraphError,
    Laplacian,
    NodeSet,
    complete_digraph,
    directed_cycle,
)
from .edgelist import EdgeListError, format_edgelist, parse_edgelist, read_edgelist, write_edgelist
from .exhaustive import (
    ExhaustiveResult,
    SubsetPair,
    determine_robustness,
    enumerate_unordered_pairs,
    pair_count,
    refutes_robustness,
    robust_holds,
    robustness_upper_limit,
)
from .milp import (
    BinaryPair,
    MilpModel,
    build_milp,
    check_feasible,
    decode_pair,
    dump_model,
    encode_pair,
    objective_value,
)
from .simplex import LpSolution, SimplexError, solve_lp
from .bnb import BnbResult, Status, branch_select, lp_relax, round_to_incumbent, solve, solve_with_threshold
from .generators import MODELS, SplitMix64, gen_digraph, gen_erdos, gen_k_in, gen_k_out, generate
from .bench import BenchConfig, BenchRecord, ComputeOutcome, compute_rmax, emit_csv, emit_plotdata, read_csv, run_benchmark

__version__ = "0.1.0"

__all__ = [
    "MAX_NODES",
    "Digraph",
    "GraphError",
    "Laplacian",
    "NodeSet",
    "complete_digraph",
    "directed_cycle",
    "EdgeListError",
    "format_edgelist",
    "parse_edgelist",
    "read_edgelist",
    "write_edgelist",
    "ExhaustiveResult",
    "SubsetPair",
    "determine_robustness",
    "enumerate_unordered_pairs",
    "pair_count",
    "refutes_robustness",
    "robust_holds",
    "robustness_upper_limit",
    "BinaryPair",
    "MilpModel",
    "build_milp",
    "check_feasible",
    "decode_pair",
    "dump_model",
    "encode_pair",
    "objective_value",
    "LpSolution",
    "SimplexError",
    "solve_lp",
    "BnbResult",
    "Status",
    "branch_select",
    "lp_relax",
    "round_to_incumbent",
    "solve",
    "solve_with_threshold",
    "MODELS",
    "SplitMix64",
    "gen_digraph",
    "gen_erdos",
    "gen_k_in",
    "gen_k_out",
    "generate",
    "BenchConfig",
    "BenchRecord",
    "ComputeOutcome",
    "compute_rmax",
    "emit_csv",
    "emit_plotdata",
    "read_csv",
    "run_benchmark",
    "__version__",
]
