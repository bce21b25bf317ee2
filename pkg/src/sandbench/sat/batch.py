"""Sequential batch solving with wall-clock totals.

The batch total is the official task score; comparative experiments
should rely on decision counts, which are machine-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

from sandbench.sat.cnf import CNFInstance
from sandbench.sat.dpll import Heuristic, HeuristicFault, SolveStats, dpll_solve


@dataclass
class BatchTiming:
    per_instance: list[SolveStats]
    total_wall_time: float

    @property
    def total_decisions(self) -> int:
        return sum(s.decisions for s in self.per_instance)


def time_batch(instances: list[CNFInstance], heuristic: Heuristic) -> BatchTiming:
    """Solve every instance on one thread and total the wall-clock times.

    A heuristic fault aborts the whole batch; callers score it as an
    invalid result rather than a partial total.
    """
    per_instance: list[SolveStats] = []
    for instance in instances:
        per_instance.append(dpll_solve(instance, heuristic))
    return BatchTiming(
        per_instance=per_instance,
        total_wall_time=sum(s.wall_time for s in per_instance),
    )


def score_batch(instances: list[CNFInstance], heuristic: Heuristic) -> float | None:
    """Task score: the batch wall-clock total, or None when the heuristic faults."""
    try:
        return time_batch(instances, heuristic).total_wall_time
    except HeuristicFault:
        return None
