"""Per-task rankings and Borda-count rank aggregation.

Each task ranks the methods plus the task baseline by raw score in the
task's metric direction; invalid entries rank last.  With N contenders,
rank k earns N - k Borda points and the aggregate orders methods by total
points.  Exact score ties and point ties are broken deterministically:
later names (descending lexicographic) rank first, matching the
convention of the published benchmark tables this module reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass

from sandbench.evaluation.scores import AggregateTable, Direction

BASELINE_LABEL = "Baseline"


def _name_key(name: str) -> tuple[int, ...]:
    # Descending lexicographic order via negated code points.
    return tuple(-ord(c) for c in name)


@dataclass
class RankTable:
    """Per-task orderings (baseline included) and the Borda aggregate."""

    tasks: list[str]
    per_task_ranks: dict[str, list[str]]
    aggregate: list[str]
    points: dict[str, int]


def rank_task(table: AggregateTable, task: str,
              baseline_label: str = BASELINE_LABEL) -> list[str]:
    """Rank methods plus the baseline on one task, best first."""
    direction = table.directions[task]
    entries: list[tuple[str, float | None]] = [
        (m, table.value(task, m)) for m in table.methods
    ]
    entries.append((baseline_label, table.baselines[task]))
    valid = [(n, s) for n, s in entries if s is not None]
    invalid = [n for n, s in entries if s is None]
    valid.sort(
        key=lambda e: (
            -e[1] if direction is Direction.HIGHER else e[1],
            _name_key(e[0]),
        )
    )
    invalid.sort(key=_name_key)
    return [n for n, _ in valid] + invalid


def borda_ranks(table: AggregateTable,
                baseline_label: str = BASELINE_LABEL) -> RankTable:
    """Compute per-task rankings and the Borda aggregate ordering."""
    per_task = {t: rank_task(table, t, baseline_label) for t in table.tasks}
    names = list(table.methods) + [baseline_label]
    n = len(names)
    points = {name: 0 for name in names}
    rank_counts = {name: [0] * n for name in names}
    for order in per_task.values():
        for position, name in enumerate(order, start=1):
            points[name] += n - position
            rank_counts[name][position - 1] += 1
    # Point ties fall back to the better rank-count profile (more first
    # places, then more second places, ...), then to the name convention.
    aggregate = sorted(
        names,
        key=lambda name: (
            -points[name],
            tuple(-c for c in rank_counts[name]),
            _name_key(name),
        ),
    )
    return RankTable(
        tasks=list(table.tasks),
        per_task_ranks=per_task,
        aggregate=aggregate,
        points=points,
    )
