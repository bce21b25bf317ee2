from __future__ import annotations

import pytest

from sandbench.sat.cnf import CNFInstance
from sandbench.sat.dpll import (
    HeuristicChoice,
    HeuristicFault,
    dpll_solve,
)
from sandbench.sat.generate import generate_instances
from sandbench.sat.heuristics import (
    first_unassigned_heuristic,
    frequency_heuristic,
    random_heuristic,
)
from sandbench.sat.oracle import brute_force_sat


def test_empty_clause_list_is_satisfiable():
    stats = dpll_solve(CNFInstance.from_clauses(3, []), first_unassigned_heuristic)
    assert stats.satisfiable
    assert stats.assignment == {1: False, 2: False, 3: False}
    assert stats.decisions == 0


def test_unit_conflict_is_unsatisfiable():
    inst = CNFInstance.from_clauses(1, [(1,), (-1,)])
    stats = dpll_solve(inst, first_unassigned_heuristic)
    assert not stats.satisfiable
    assert stats.assignment is None


def test_explicit_empty_clause_is_unsatisfiable():
    inst = CNFInstance.from_clauses(2, [(), (1, 2)])
    assert not dpll_solve(inst, first_unassigned_heuristic).satisfiable


def test_satisfying_assignment_is_verified_and_total():
    inst = CNFInstance.from_clauses(4, [(1, 2, 3), (-1, 2, 4), (-2, -3, -4)])
    stats = dpll_solve(inst, random_heuristic(0))
    assert stats.satisfiable
    assert set(stats.assignment) == {1, 2, 3, 4}
    assert inst.satisfied_by(stats.assignment)


def test_matches_bruteforce_on_small_instances():
    count = 0
    for ratio in (3.0, 4.3, 5.5):
        for i, inst in enumerate(generate_instances(25, (5, 12), ratio, seed=101)):
            got = dpll_solve(inst, random_heuristic(i)).satisfiable
            assert got == brute_force_sat(inst), f"mismatch on instance {i} at ratio {ratio}"
            count += 1
    assert count == 75


def test_pure_literal_elimination_counts_as_propagation():
    # x3 appears only positively; x1/x2 form a satisfiable core
    inst = CNFInstance.from_clauses(3, [(1, 2), (-1, 2), (3, 1)])
    stats = dpll_solve(inst, first_unassigned_heuristic)
    assert stats.satisfiable
    assert stats.unit_propagations > 0


def test_verdict_invariant_across_heuristics():
    batch = generate_instances(30, (8, 14), 4.3, seed=77)
    for i, inst in enumerate(batch):
        verdicts = {
            dpll_solve(inst, first_unassigned_heuristic).satisfiable,
            dpll_solve(inst, frequency_heuristic).satisfiable,
            dpll_solve(inst, random_heuristic(i)).satisfiable,
        }
        assert len(verdicts) == 1


def test_heuristic_choosing_assigned_variable_faults():
    inst = CNFInstance.from_clauses(3, [(1, 2, 3), (-1, -2, 3), (1, -2, -3), (-1, 2, -3)])

    def stubborn(state):
        return HeuristicChoice(variable=1, polarity=True)

    # first call is fine; once 1 is assigned the second call must fault
    with pytest.raises(HeuristicFault, match="already-assigned"):
        dpll_solve(inst, stubborn)


def test_heuristic_returning_garbage_faults():
    inst = CNFInstance.from_clauses(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)])
    with pytest.raises(HeuristicFault, match="not a HeuristicChoice"):
        dpll_solve(inst, lambda state: (1, True))


def test_heuristic_out_of_range_variable_faults():
    inst = CNFInstance.from_clauses(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)])
    with pytest.raises(HeuristicFault, match="outside"):
        dpll_solve(inst, lambda state: HeuristicChoice(99, True))


def test_stats_are_populated():
    inst = generate_instances(1, (20, 20), 4.3, seed=5)[0]
    stats = dpll_solve(inst, random_heuristic(3))
    assert stats.wall_time >= 0.0
    assert stats.decisions >= 0
    assert stats.unit_propagations >= 0
