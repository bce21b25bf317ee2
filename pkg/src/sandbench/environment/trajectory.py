"""Trajectory persistence: one JSONL file per session, plus replay.

Line 1 is a header record, followed by one record per step, and a final
record carrying the termination status, the attempt log and the final
validation report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from sandbench.environment.session import (
    SessionState,
    StepRecord,
    TerminationStatus,
    execute_action,
)


@dataclass
class Trajectory:
    task_id: str
    model: str
    seed: int
    step_limit: int
    steps: list[StepRecord]
    status: str
    termination: Optional[TerminationStatus]
    attempts: list[dict] = field(default_factory=list)
    final_report: Optional[dict] = None

    @property
    def valid_attempt_count(self) -> int:
        return len(self.attempts)


def write_trajectory(session: SessionState, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        json.dumps(
            {
                "kind": "header",
                "task_id": session.spec.task_id,
                "model": session.model_name,
                "seed": session.seed,
                "step_limit": session.config.step_limit,
                "command_timeout": session.config.command_timeout,
                "training_timeout": session.config.training_timeout,
            },
            sort_keys=True,
        )
    ]
    for step in session.steps:
        lines.append(
            json.dumps(
                {
                    "kind": "step",
                    "index": step.index,
                    "thought": step.thought,
                    "action": step.action,
                    "observation": step.observation,
                    "wall_time": step.wall_time,
                    "exit_code": step.exit_code,
                },
                sort_keys=True,
            )
        )
    final: dict = {
        "kind": "final",
        "status": session.status,
        "termination": (
            {"kind": session.termination.kind, "detail": session.termination.detail}
            if session.termination
            else None
        ),
        "attempts": [
            {"step": step_index, "metrics": report.metrics}
            for step_index, report in session.attempt_log
        ],
        "final_report": (
            {"valid": session.final_report.valid, "metrics": session.final_report.metrics}
            if session.final_report is not None
            else None
        ),
    }
    lines.append(json.dumps(final, sort_keys=True))
    path.write_text("\n".join(lines) + "\n")


def load_trajectory(path: str | Path) -> Trajectory:
    path = Path(path)
    header = None
    steps: list[StepRecord] = []
    final = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
            kind = record["kind"]
            if kind == "header":
                header = record
            elif kind == "step":
                steps.append(
                    StepRecord(
                        index=record["index"],
                        thought=record["thought"],
                        action=record["action"],
                        observation=record["observation"],
                        wall_time=record["wall_time"],
                        exit_code=record["exit_code"],
                    )
                )
            elif kind == "final":
                final = record
            else:
                raise ValueError(f"unknown record kind {kind!r}")
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"{path}: line {lineno}: corrupt trajectory record: {exc}") from exc
    if header is None:
        raise ValueError(f"{path}: missing header record")
    if final is None:
        raise ValueError(f"{path}: missing final record")
    termination = None
    if final.get("termination"):
        termination = TerminationStatus(
            kind=final["termination"]["kind"],
            detail=final["termination"].get("detail", ""),
        )
    return Trajectory(
        task_id=header["task_id"],
        model=header.get("model", ""),
        seed=header["seed"],
        step_limit=header["step_limit"],
        steps=steps,
        status=final["status"],
        termination=termination,
        attempts=final.get("attempts", []),
        final_report=final.get("final_report"),
    )


def replay_actions(session: SessionState, trajectory: Trajectory) -> list[dict]:
    """Re-execute a recorded action sequence in a fresh session.

    Returns one mismatch entry per step whose replayed observation differs
    from the recorded one; an empty list means the replay reproduced the
    run exactly.
    """
    from sandbench.tools.dispatch import dispatch_command

    mismatches = []
    for step in trajectory.steps:
        if not session.running:
            mismatches.append(
                {"index": step.index, "recorded": step.observation,
                 "replayed": "<session already terminated>"}
            )
            break
        observation = dispatch_command(session, step.action, thought=step.thought)
        if observation != step.observation:
            mismatches.append(
                {"index": step.index, "recorded": step.observation,
                 "replayed": observation}
            )
    return mismatches
