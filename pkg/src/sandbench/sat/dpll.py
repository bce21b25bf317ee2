"""Complete DPLL with unit propagation, pure-literal elimination and
pluggable branching.

The solver keeps per-clause satisfied/unassigned counters updated
incrementally along an undo trail.  The counter updates are the hot path
(tens of millions of events on a phase-transition batch), so they are
compiled with numba over flat arrays; the search itself, branching
heuristics and all bookkeeping stay in Python.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit

from sandbench.sat.cnf import CNFInstance


class HeuristicFault(Exception):
    """The branching heuristic returned an unusable choice."""


@dataclass(frozen=True)
class HeuristicChoice:
    variable: int
    polarity: bool


@dataclass
class SolveStats:
    satisfiable: bool
    assignment: Optional[dict[int, bool]]
    decisions: int
    unit_propagations: int
    wall_time: float


# counters[] slots
_UNSATISFIED = 0
_UNIT_PROPS = 1
_TRAIL_PTR = 2
_PENDING_PTR = 3
_PURE_PTR = 4

_OK = 1
_CONFLICT = 0
_OVERFLOW = -2


@njit(cache=True)
def _assign(var, value, clause_lits, clause_start, occ_clauses, occ_start,
            sat_count, unassigned_count, active_pos, active_neg, assign,
            trail, pending, pure_cand, counters):
    assign[var] = value
    trail[counters[_TRAIL_PTR]] = var
    counters[_TRAIL_PTR] += 1
    ok = _OK
    true_idx = 2 * var + (0 if value == 1 else 1)
    false_idx = 2 * var + (1 if value == 1 else 0)
    for k in range(occ_start[true_idx], occ_start[true_idx + 1]):
        ci = occ_clauses[k]
        sat_count[ci] += 1
        unassigned_count[ci] -= 1
        if sat_count[ci] == 1:
            counters[_UNSATISFIED] -= 1
            for j in range(clause_start[ci], clause_start[ci + 1]):
                lit = clause_lits[j]
                if lit > 0:
                    active_pos[lit] -= 1
                    if active_pos[lit] == 0 and assign[lit] == -1:
                        if counters[_PURE_PTR] >= pure_cand.shape[0]:
                            return _OVERFLOW
                        pure_cand[counters[_PURE_PTR]] = lit
                        counters[_PURE_PTR] += 1
                else:
                    active_neg[-lit] -= 1
                    if active_neg[-lit] == 0 and assign[-lit] == -1:
                        if counters[_PURE_PTR] >= pure_cand.shape[0]:
                            return _OVERFLOW
                        pure_cand[counters[_PURE_PTR]] = -lit
                        counters[_PURE_PTR] += 1
    for k in range(occ_start[false_idx], occ_start[false_idx + 1]):
        ci = occ_clauses[k]
        unassigned_count[ci] -= 1
        if sat_count[ci] == 0:
            if unassigned_count[ci] == 0:
                ok = _CONFLICT
            elif unassigned_count[ci] == 1:
                if counters[_PENDING_PTR] >= pending.shape[0]:
                    return _OVERFLOW
                pending[counters[_PENDING_PTR]] = ci
                counters[_PENDING_PTR] += 1
    return ok


@njit(cache=True)
def _propagate(clause_lits, clause_start, occ_clauses, occ_start,
               sat_count, unassigned_count, active_pos, active_neg, assign,
               trail, pending, pure_cand, counters):
    """Unit propagation and pure-literal elimination to fixpoint.

    On conflict both work stacks are cleared; dropped entries only cost
    rediscovered propagations, never correctness.
    """
    changed = True
    while changed:
        changed = False
        while counters[_PENDING_PTR] > 0:
            counters[_PENDING_PTR] -= 1
            ci = pending[counters[_PENDING_PTR]]
            # Entries may be stale after backtracking or later satisfaction.
            if sat_count[ci] != 0 or unassigned_count[ci] != 1:
                continue
            lit = 0
            for j in range(clause_start[ci], clause_start[ci + 1]):
                cand = clause_lits[j]
                v = cand if cand > 0 else -cand
                if assign[v] == -1:
                    lit = cand
                    break
            counters[_UNIT_PROPS] += 1
            changed = True
            var = lit if lit > 0 else -lit
            rc = _assign(var, 1 if lit > 0 else 0,
                         clause_lits, clause_start, occ_clauses, occ_start,
                         sat_count, unassigned_count, active_pos, active_neg,
                         assign, trail, pending, pure_cand, counters)
            if rc != _OK:
                if rc == _CONFLICT:
                    counters[_PENDING_PTR] = 0
                    counters[_PURE_PTR] = 0
                return rc
        # Pure literals: a variable occurring with a single polarity in the
        # unsatisfied clauses can be fixed; this only satisfies clauses, so
        # it can never produce a conflict.  Candidates are rechecked because
        # counters move under backtracking.
        while counters[_PURE_PTR] > 0:
            counters[_PURE_PTR] -= 1
            var = pure_cand[counters[_PURE_PTR]]
            if assign[var] != -1:
                continue
            pos = active_pos[var]
            neg = active_neg[var]
            if (pos == 0) != (neg == 0):
                counters[_UNIT_PROPS] += 1
                changed = True
                rc = _assign(var, 1 if neg == 0 else 0,
                             clause_lits, clause_start, occ_clauses, occ_start,
                             sat_count, unassigned_count, active_pos, active_neg,
                             assign, trail, pending, pure_cand, counters)
                if rc != _OK:
                    if rc == _CONFLICT:
                        counters[_PENDING_PTR] = 0
                        counters[_PURE_PTR] = 0
                    return rc
                break  # revisit the unit queue before more pure literals
    return _OK


@njit(cache=True)
def _unassign_to(mark, clause_lits, clause_start, occ_clauses, occ_start,
                 sat_count, unassigned_count, active_pos, active_neg, assign,
                 trail, counters):
    while counters[_TRAIL_PTR] > mark:
        counters[_TRAIL_PTR] -= 1
        var = trail[counters[_TRAIL_PTR]]
        value = assign[var]
        assign[var] = -1
        true_idx = 2 * var + (0 if value == 1 else 1)
        false_idx = 2 * var + (1 if value == 1 else 0)
        for k in range(occ_start[true_idx], occ_start[true_idx + 1]):
            ci = occ_clauses[k]
            if sat_count[ci] == 1:
                counters[_UNSATISFIED] += 1
                for j in range(clause_start[ci], clause_start[ci + 1]):
                    lit = clause_lits[j]
                    if lit > 0:
                        active_pos[lit] += 1
                    else:
                        active_neg[-lit] += 1
            sat_count[ci] -= 1
            unassigned_count[ci] += 1
        for k in range(occ_start[false_idx], occ_start[false_idx + 1]):
            unassigned_count[occ_clauses[k]] += 1


class SolverState:
    """Read-only view of the solver handed to branching heuristics."""

    def __init__(self, solver: "_Solver") -> None:
        self._solver = solver

    @property
    def num_vars(self) -> int:
        return self._solver.num_vars

    @property
    def assignment(self) -> dict[int, bool]:
        assign = self._solver.assign
        return {
            v: bool(assign[v])
            for v in range(1, self._solver.num_vars + 1)
            if assign[v] != -1
        }

    def unassigned_vars(self) -> list[int]:
        return (np.flatnonzero(self._solver.assign[1:] == -1) + 1).tolist()

    def literal_counts(self, variable: int) -> tuple[int, int]:
        """(positive, negative) occurrences of the variable in unsatisfied clauses."""
        return (
            int(self._solver.active_pos[variable]),
            int(self._solver.active_neg[variable]),
        )

    def active_clauses(self) -> list[list[int]]:
        """Current formula: unsatisfied clauses reduced to their unassigned literals."""
        s = self._solver
        out = []
        for ci, clause in enumerate(s.py_clauses):
            if s.sat_count[ci] == 0:
                out.append([lit for lit in clause if s.assign[abs(lit)] == -1])
        return out

    def as_json(self) -> dict:
        """JSON-friendly snapshot for out-of-process heuristics."""
        return {
            "num_vars": self.num_vars,
            "assignment": {str(v): val for v, val in self.assignment.items()},
            "clauses": self.active_clauses(),
        }


Heuristic = Callable[[SolverState], HeuristicChoice]


class _Solver:
    def __init__(self, instance: CNFInstance) -> None:
        self.num_vars = n = instance.num_vars
        self.py_clauses = [list(c) for c in instance.clauses]
        m = len(self.py_clauses)
        flat = [lit for clause in self.py_clauses for lit in clause]
        self.clause_lits = np.array(flat or [0], dtype=np.int32)
        starts = np.zeros(m + 1, dtype=np.int32)
        for ci, clause in enumerate(self.py_clauses):
            starts[ci + 1] = starts[ci] + len(clause)
        self.clause_start = starts

        # Occurrence lists indexed by 2*var (positive) and 2*var+1 (negative).
        buckets: list[list[int]] = [[] for _ in range(2 * (n + 1))]
        self.active_pos = np.zeros(n + 1, dtype=np.int32)
        self.active_neg = np.zeros(n + 1, dtype=np.int32)
        for ci, clause in enumerate(self.py_clauses):
            for lit in clause:
                if lit > 0:
                    buckets[2 * lit].append(ci)
                    self.active_pos[lit] += 1
                else:
                    buckets[-2 * lit + 1].append(ci)
                    self.active_neg[-lit] += 1
        occ_start = np.zeros(2 * (n + 1) + 1, dtype=np.int32)
        for i, bucket in enumerate(buckets):
            occ_start[i + 1] = occ_start[i] + len(bucket)
        self.occ_clauses = np.array(
            [ci for bucket in buckets for ci in bucket] or [0], dtype=np.int32
        )
        self.occ_start = occ_start

        self.assign = np.full(n + 1, -1, dtype=np.int8)
        self.sat_count = np.zeros(max(m, 1), dtype=np.int32)
        self.unassigned_count = np.array(
            [len(c) for c in self.py_clauses] or [0], dtype=np.int32
        )
        self.trail = np.zeros(n + 1, dtype=np.int32)
        capacity = 2 * (m + n) + 16
        self.pending = np.zeros(capacity, dtype=np.int32)
        self.pure_cand = np.zeros(capacity, dtype=np.int32)
        self.counters = np.zeros(8, dtype=np.int64)
        self.counters[_UNSATISFIED] = m
        self.has_empty_clause = any(len(c) == 0 for c in self.py_clauses)
        for ci, clause in enumerate(self.py_clauses):
            if len(clause) == 1:
                self.pending[self.counters[_PENDING_PTR]] = ci
                self.counters[_PENDING_PTR] += 1
        for v in range(1, n + 1):
            pos, neg = self.active_pos[v], self.active_neg[v]
            if (pos == 0) != (neg == 0):
                self.pure_cand[self.counters[_PURE_PTR]] = v
                self.counters[_PURE_PTR] += 1
        self.decisions = 0

    def _args(self):
        return (
            self.clause_lits, self.clause_start, self.occ_clauses, self.occ_start,
            self.sat_count, self.unassigned_count, self.active_pos, self.active_neg,
            self.assign, self.trail, self.pending, self.pure_cand, self.counters,
        )

    def propagate(self) -> bool:
        rc = _propagate(*self._args())
        if rc == _OVERFLOW:
            raise RuntimeError("solver work stack overflow")
        return rc == _OK

    def assign_and_propagate(self, var: int, value: bool) -> bool:
        rc = _assign(var, 1 if value else 0, *self._args())
        if rc == _OVERFLOW:
            raise RuntimeError("solver work stack overflow")
        if rc == _CONFLICT:
            self.counters[_PENDING_PTR] = 0
            self.counters[_PURE_PTR] = 0
            return False
        return self.propagate()

    def unassign_to(self, mark: int) -> None:
        _unassign_to(
            mark,
            self.clause_lits, self.clause_start, self.occ_clauses, self.occ_start,
            self.sat_count, self.unassigned_count, self.active_pos, self.active_neg,
            self.assign, self.trail, self.counters,
        )
        self.counters[_PENDING_PTR] = 0
        self.counters[_PURE_PTR] = 0

    def solve(self, heuristic: Heuristic) -> bool:
        if self.has_empty_clause:
            return False
        if not self.propagate():
            return False
        if self.counters[_UNSATISFIED] == 0:
            return True
        choice = heuristic(SolverState(self))
        if not isinstance(choice, HeuristicChoice):
            raise HeuristicFault(f"heuristic returned {choice!r}, not a HeuristicChoice")
        var = choice.variable
        if not (1 <= var <= self.num_vars):
            raise HeuristicFault(f"heuristic chose variable {var} outside 1..{self.num_vars}")
        if self.assign[var] != -1:
            raise HeuristicFault(f"heuristic chose already-assigned variable {var}")
        self.decisions += 1
        for value in (choice.polarity, not choice.polarity):
            mark = int(self.counters[_TRAIL_PTR])
            if self.assign_and_propagate(var, value) and self.solve(heuristic):
                return True
            self.unassign_to(mark)
        return False


def dpll_solve(instance: CNFInstance, heuristic: Heuristic) -> SolveStats:
    """Decide satisfiability; a satisfying assignment is verified before return."""
    start = time.perf_counter()
    solver = _Solver(instance)
    sat = solver.solve(heuristic)
    elapsed = time.perf_counter() - start
    assignment = None
    if sat:
        # Variables untouched by the search are unconstrained; fix them so the
        # returned assignment is total.
        assignment = {
            v: bool(solver.assign[v]) if solver.assign[v] != -1 else False
            for v in range(1, instance.num_vars + 1)
        }
        if not instance.satisfied_by(assignment):
            raise AssertionError("satisfiable verdict with non-satisfying assignment")
    return SolveStats(
        satisfiable=sat,
        assignment=assignment,
        decisions=solver.decisions,
        unit_propagations=int(solver.counters[_UNIT_PROPS]),
        wall_time=elapsed,
    )
