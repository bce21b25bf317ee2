from __future__ import annotations

import pytest

from sandbench.sat.cnf import CNFInstance, read_dimacs, write_dimacs
from sandbench.sat.dpll import dpll_solve
from sandbench.sat.generate import (
    BatchManifest,
    generate_instances,
    generate_unsat_sat_pair,
)
from sandbench.sat.heuristics import first_unassigned_heuristic
from sandbench.sat.oracle import brute_force_sat


def test_count_zero_gives_empty_batch():
    assert generate_instances(0, (5, 10), 4.3, seed=0) == []


def test_same_seed_same_batch():
    a = generate_instances(20, (10, 30), 4.3, seed=5)
    b = generate_instances(20, (10, 30), 4.3, seed=5)
    assert a == b


def test_different_seeds_differ():
    a = generate_instances(5, (10, 30), 4.3, seed=5)
    b = generate_instances(5, (10, 30), 4.3, seed=6)
    assert a != b


def test_clause_count_is_rounded_ratio():
    batch = generate_instances(10, (20, 20), 4.3, seed=1)
    assert all(len(inst.clauses) == 86 for inst in batch)  # round(4.3 * 20)
    batch = generate_instances(5, (7, 7), 3.0, seed=1)
    assert all(len(inst.clauses) == 21 for inst in batch)


def test_vars_within_range():
    batch = generate_instances(30, (12, 17), 4.0, seed=2)
    assert all(12 <= inst.num_vars <= 17 for inst in batch)
    assert {inst.num_vars for inst in batch} != {12}


def test_clauses_are_distinct_three_wide_no_tautologies():
    for inst in generate_instances(10, (8, 12), 4.3, seed=3):
        keys = {tuple(sorted(c)) for c in inst.clauses}
        assert len(keys) == len(inst.clauses)
        for clause in inst.clauses:
            assert len(clause) == 3
            variables = {abs(lit) for lit in clause}
            assert len(variables) == 3  # distinct variables, no v with -v


def test_infeasible_parameters_rejected():
    # 3 variables allow only 8 distinct 3-literal clauses
    with pytest.raises(ValueError, match="distinct"):
        generate_instances(1, (3, 3), 10.0, seed=0)


def test_min_vars_enforced():
    with pytest.raises(ValueError, match="at least 3"):
        generate_instances(1, (2, 5), 4.0, seed=0)


def test_dimacs_round_trip(tmp_path):
    batch = generate_instances(3, (5, 9), 4.3, seed=7)
    for i, inst in enumerate(batch):
        path = tmp_path / f"i{i}.cnf"
        write_dimacs(inst, path)
        assert read_dimacs(path) == inst


def test_dimacs_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 3 1\n1 2 3\n")  # missing terminating 0
    with pytest.raises(ValueError, match="not terminated"):
        read_dimacs(bad)


def test_manifest_round_trip(tmp_path):
    manifest = BatchManifest(seed=9, n_range=(50, 100), ratio=4.3, count=100)
    path = tmp_path / "manifest.json"
    manifest.dump(path)
    assert BatchManifest.load(path) == manifest


def test_pair_generator_produces_unsat_sat_twins():
    for seed in range(5):
        unsat, sat = generate_unsat_sat_pair(8, seed=seed)
        assert not brute_force_sat(unsat)
        assert brute_force_sat(sat)


def test_pair_generator_via_batch_flag():
    batch = generate_instances(6, (6, 8), 4.3, seed=1, generator="pair")
    assert len(batch) == 6
    verdicts = [dpll_solve(i, first_unassigned_heuristic).satisfiable for i in batch]
    # alternating unsat/sat by construction
    assert verdicts[0::2] == [False, False, False]
    assert verdicts[1::2] == [True, True, True]


def test_cnf_rejects_tautological_clause():
    with pytest.raises(ValueError, match="negation"):
        CNFInstance.from_clauses(2, [(1, -1, 2)])


def test_cnf_rejects_out_of_range_literal():
    with pytest.raises(ValueError, match="out of range"):
        CNFInstance.from_clauses(2, [(1, 3)])
