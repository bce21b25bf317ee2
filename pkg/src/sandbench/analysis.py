"""Post-hoc trajectory analytics: action categories, outcomes, histograms.

Action categorisation looks only at the first shell token (compound
commands count as their first token) plus the launch prefixes that mark
training/evaluation script runs.  The category set is closed; anything
unrecognised is an open-ended shell command.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from sandbench.environment.session import TerminationKind
from sandbench.environment.trajectory import Trajectory


class ActionCategory(Enum):
    EDIT = "Edit"
    VIEW = "View"
    SEARCH = "Search"
    VALIDATE = "Validate"
    SUBMIT = "Submit"
    PYTHON = "Python"
    BASH = "Bash"


_EDIT_COMMANDS = frozenset({"edit", "insert", "create"})
_VIEW_COMMANDS = frozenset({"open", "goto", "scroll_up", "scroll_down"})
_SEARCH_COMMANDS = frozenset({"search_dir", "search_file", "find_file"})

# Launch prefixes for script runs; matched against the whole command so
# "python3 train.py" and "torchrun --nproc..." both count.
_LAUNCH_RE = re.compile(r"^(python|deepspeed|torchrun)")


def categorize_action(command: str) -> ActionCategory:
    """Map one command string to its category; total on all inputs."""
    stripped = command.strip()
    if not stripped:
        return ActionCategory.BASH
    token = stripped.split(None, 1)[0]
    if token in _EDIT_COMMANDS:
        return ActionCategory.EDIT
    if token in _VIEW_COMMANDS:
        return ActionCategory.VIEW
    if token in _SEARCH_COMMANDS:
        return ActionCategory.SEARCH
    if token == "validate":
        return ActionCategory.VALIDATE
    if token == "submit":
        return ActionCategory.SUBMIT
    if _LAUNCH_RE.match(token):
        return ActionCategory.PYTHON
    return ActionCategory.BASH


class RunOutcome(Enum):
    COMPLETED = "completed"
    INCOMPLETE = "incomplete"
    FAILED = "failed"


def classify_run(trajectory: Trajectory) -> RunOutcome:
    """Completed, incomplete or failed, from the termination and attempt log.

    A run that ends in submission (or auto-submission) with a valid final
    report is completed.  Error terminations split on whether any valid
    attempt was produced along the way.
    """
    termination = trajectory.termination
    if termination is None:
        raise ValueError(f"trajectory for {trajectory.task_id!r} has no termination")
    if termination.kind in (TerminationKind.SUBMIT, TerminationKind.AUTOSUBMIT):
        report = trajectory.final_report
        if report is not None and report.get("valid"):
            return RunOutcome.COMPLETED
        # Terminal states always carry a report; treat a missing or invalid
        # one as a failed submission path.
        return (
            RunOutcome.INCOMPLETE
            if trajectory.valid_attempt_count > 0
            else RunOutcome.FAILED
        )
    if trajectory.valid_attempt_count > 0:
        return RunOutcome.INCOMPLETE
    return RunOutcome.FAILED


@dataclass
class ActionHistogram:
    grouping: str
    counts: dict[tuple[str, ActionCategory], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def group_total(self, key: str) -> int:
        return sum(v for (k, _), v in self.counts.items() if k == key)


def histogram(trajectories: list[Trajectory], grouping: str = "by-model") -> ActionHistogram:
    """Count actions per (group key, category); grouping is by-model, by-task or by-step."""
    if grouping not in ("by-model", "by-task", "by-step"):
        raise ValueError(f"unknown grouping {grouping!r}")
    counts: Counter = Counter()
    for trajectory in trajectories:
        for step in trajectory.steps:
            if grouping == "by-model":
                key = trajectory.model
            elif grouping == "by-task":
                key = trajectory.task_id
            else:
                key = str(step.index)
            counts[(key, categorize_action(step.action))] += 1
    return ActionHistogram(grouping=grouping, counts=dict(counts))


def termination_distribution(trajectories: list[Trajectory]) -> dict[str, int]:
    """Counts of error termination kinds (submissions are not errors)."""
    counts: Counter = Counter()
    for trajectory in trajectories:
        termination = trajectory.termination
        if termination is not None and termination.is_error:
            counts[termination.kind] += 1
    return dict(counts)


def outcome_distribution(trajectories: list[Trajectory]) -> dict[RunOutcome, int]:
    counts: Counter = Counter(classify_run(t) for t in trajectories)
    return dict(counts)
