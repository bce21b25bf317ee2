"""Score tables: per-run scores, direction handling and @k aggregation.

A score table holds one score per (task, method, run) plus a per-task
baseline score and metric direction.  Invalid entries (a method that never
produced a scoreable artifact) are stored as ``None`` and written to CSV
as the literal token ``inf``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable


class Direction(Enum):
    """Whether lower or higher metric values are better for a task."""

    LOWER = "lower"
    HIGHER = "higher"

    def better(self, a: float, b: float) -> bool:
        """True if score ``a`` strictly beats score ``b``."""
        return a < b if self is Direction.LOWER else a > b

    def best(self, values: Iterable[float]) -> float:
        vals = list(values)
        if not vals:
            raise ValueError("no values to compare")
        return min(vals) if self is Direction.LOWER else max(vals)

    @classmethod
    def parse(cls, token: str) -> "Direction":
        token = token.strip().lower()
        for d in cls:
            if token == d.value:
                return d
        raise ValueError(f"unknown metric direction {token!r} (expected 'lower' or 'higher')")


class ScoreTableError(ValueError):
    """Raised for malformed or inconsistent score tables."""


@dataclass
class ScoreTable:
    """Per-run scores for a set of tasks and methods.

    ``scores`` maps (task, method, run) to a float or ``None`` for the
    invalid sentinel.  Task and method order is preserved as given and
    used for all deterministic iteration.
    """

    tasks: list[str]
    methods: list[str]
    directions: dict[str, Direction]
    baselines: dict[str, float]
    scores: dict[tuple[str, str, int], float | None] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for t in self.tasks:
            if t not in self.directions:
                raise ScoreTableError(f"task {t!r} has no metric direction")
            if t not in self.baselines:
                raise ScoreTableError(f"task {t!r} has no baseline score")
        for (t, m, run), _ in self.scores.items():
            if t not in self.tasks:
                raise ScoreTableError(f"score references unknown task {t!r}")
            if m not in self.methods:
                raise ScoreTableError(f"score references unknown method {m!r}")
            if run < 0:
                raise ScoreTableError(f"negative run index {run} for ({t!r}, {m!r})")

    def runs_for(self, task: str, method: str) -> list[int]:
        return sorted(r for (t, m, r) in self.scores if t == task and m == method)

    def run_indices(self) -> list[int]:
        return sorted({r for (_, _, r) in self.scores})

    @classmethod
    def from_csv(cls, path: str | Path) -> "ScoreTable":
        """Read a table from CSV with header (task, method, run, score, direction, baseline)."""
        tasks: list[str] = []
        methods: list[str] = []
        directions: dict[str, Direction] = {}
        baselines: dict[str, float] = {}
        scores: dict[tuple[str, str, int], float | None] = {}
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            required = {"task", "method", "run", "score", "direction", "baseline"}
            if reader.fieldnames is None or not required.issubset(reader.fieldnames):
                raise ScoreTableError(
                    f"{path}: expected CSV header with columns {sorted(required)}"
                )
            for lineno, row in enumerate(reader, start=2):
                try:
                    task = row["task"].strip()
                    method = row["method"].strip()
                    run = int(row["run"])
                    raw = row["score"].strip().lower()
                    score = None if raw == "inf" else float(row["score"])
                    direction = Direction.parse(row["direction"])
                    baseline = float(row["baseline"])
                except (KeyError, ValueError) as exc:
                    raise ScoreTableError(f"{path}: row {lineno}: {exc}") from exc
                if task not in directions:
                    tasks.append(task)
                    directions[task] = direction
                    baselines[task] = baseline
                elif directions[task] is not direction:
                    raise ScoreTableError(
                        f"{path}: row {lineno}: conflicting direction for task {task!r}"
                    )
                if method not in methods:
                    methods.append(method)
                if (task, method, run) in scores:
                    raise ScoreTableError(
                        f"{path}: row {lineno}: duplicate entry for ({task!r}, {method!r}, run {run})"
                    )
                scores[(task, method, run)] = score
        return cls(tasks, methods, directions, baselines, scores)

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["task", "method", "run", "score", "direction", "baseline"])
            for t in self.tasks:
                for m in self.methods:
                    for r in self.runs_for(t, m):
                        s = self.scores[(t, m, r)]
                        writer.writerow(
                            [t, m, r, "inf" if s is None else repr(s),
                             self.directions[t].value, repr(self.baselines[t])]
                        )

    def restrict_tasks(self, tasks: Iterable[str]) -> "ScoreTable":
        keep = [t for t in self.tasks if t in set(tasks)]
        missing = set(tasks) - set(keep)
        if missing:
            raise ScoreTableError(f"unknown tasks in restriction: {sorted(missing)}")
        return ScoreTable(
            tasks=keep,
            methods=list(self.methods),
            directions={t: self.directions[t] for t in keep},
            baselines={t: self.baselines[t] for t in keep},
            scores={k: v for k, v in self.scores.items() if k[0] in keep},
        )


@dataclass
class AggregateTable:
    """One score per (task, method): the direction-wise best over runs."""

    tasks: list[str]
    methods: list[str]
    directions: dict[str, Direction]
    baselines: dict[str, float]
    values: dict[tuple[str, str], float | None]
    mode: str = "submission"

    def value(self, task: str, method: str) -> float | None:
        return self.values[(task, method)]


def aggregate_at_k(table: ScoreTable, mode: str = "submission") -> AggregateTable:
    """Collapse per-run scores into the direction-wise best per (task, method).

    ``mode`` is recorded on the result ("attempt" or "submission"); the
    reduction itself is the same for both, the difference being which
    scores were collected upstream.  Every (task, method) pair must cover
    the same contiguous run indices; gaps are reported as errors.
    """
    if mode not in ("attempt", "submission"):
        raise ScoreTableError(f"unknown aggregation mode {mode!r}")
    runs = table.run_indices()
    if not runs:
        raise ScoreTableError("score table is empty")
    expected = list(range(runs[-1] + 1))
    if runs != expected:
        raise ScoreTableError(f"run indices {runs} are not contiguous from 0")
    gaps = []
    for t in table.tasks:
        for m in table.methods:
            have = table.runs_for(t, m)
            if have != expected:
                gaps.append(f"({t}, {m}): have runs {have}, expected {expected}")
    if gaps:
        raise ScoreTableError("missing runs: " + "; ".join(gaps))

    values: dict[tuple[str, str], float | None] = {}
    for t in table.tasks:
        direction = table.directions[t]
        for m in table.methods:
            valid = [
                s for r in expected
                if (s := table.scores[(t, m, r)]) is not None and math.isfinite(s)
            ]
            values[(t, m)] = direction.best(valid) if valid else None
    return AggregateTable(
        tasks=list(table.tasks),
        methods=list(table.methods),
        directions=dict(table.directions),
        baselines=dict(table.baselines),
        values=values,
        mode=mode,
    )
