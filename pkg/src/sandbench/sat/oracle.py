"""Exhaustive truth-table satisfiability check, the independent oracle for DPLL."""

from __future__ import annotations

from sandbench.sat.cnf import CNFInstance

MAX_ORACLE_VARS = 24


def brute_force_sat(instance: CNFInstance) -> bool:
    """Decide satisfiability by enumerating all 2^n assignments.

    Assignments are bitmasks; a clause is precompiled into (positive,
    negative) variable masks so each check is two bitwise tests.
    """
    n = instance.num_vars
    if n > MAX_ORACLE_VARS:
        raise ValueError(f"brute force supports at most {MAX_ORACLE_VARS} variables, got {n}")
    compiled = []
    for clause in instance.clauses:
        pos = 0
        neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        compiled.append((pos, neg))
    full = (1 << n) - 1
    for mask in range(1 << n):
        inverted = mask ^ full
        if all(mask & pos or inverted & neg for pos, neg in compiled):
            return True
    return False
