"""Random 3-SAT instances, a DPLL solver with pluggable branching, and batch timing."""

from sandbench.sat.cnf import CNFInstance, read_dimacs, write_dimacs
from sandbench.sat.generate import BatchManifest, generate_instances, generate_unsat_sat_pair
from sandbench.sat.dpll import HeuristicFault, SolveStats, SolverState, dpll_solve
from sandbench.sat.heuristics import (
    frequency_heuristic,
    random_heuristic,
    script_heuristic,
)
from sandbench.sat.oracle import brute_force_sat
from sandbench.sat.batch import BatchTiming, time_batch

__all__ = [
    "CNFInstance",
    "read_dimacs",
    "write_dimacs",
    "BatchManifest",
    "generate_instances",
    "generate_unsat_sat_pair",
    "HeuristicFault",
    "SolveStats",
    "SolverState",
    "dpll_solve",
    "frequency_heuristic",
    "random_heuristic",
    "script_heuristic",
    "brute_force_sat",
    "BatchTiming",
    "time_batch",
]
