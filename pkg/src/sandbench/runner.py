"""Task configs and the drive-one-episode plumbing shared by the CLI and tests."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from sandbench.agent.clients import ModelClient
from sandbench.agent.config import ModelConfig
from sandbench.agent.episode import EpisodeResult, run_episode
from sandbench.environment.executor import CommandExecutor
from sandbench.environment.permissions import Permission
from sandbench.environment.session import (
    SessionConfig,
    SessionState,
    provision_workspace,
)
from sandbench.environment.workspace import DatasetMount, StarterFile, WorkspaceSpec
from sandbench.memory import MemoryStore

DEFAULT_SEEDS = (0, 1, 2, 3)


@dataclass(frozen=True)
class TaskConfig:
    """On-disk task description: workspace inputs plus session limits."""

    task_id: str
    task_description: str
    eval_script: Path
    starter_files: tuple[StarterFile, ...] = ()
    dataset_mounts: tuple[DatasetMount, ...] = ()
    env_setup: dict | None = None
    step_limit: int = 50
    command_timeout: float = 1800.0
    training_timeout: float = 1800.0
    memory_enabled: bool = False

    @classmethod
    def load(cls, path: str | Path) -> "TaskConfig":
        path = Path(path)
        payload = json.loads(path.read_text())
        base = path.parent

        def _resolve(p: str) -> Path:
            candidate = Path(p)
            return candidate if candidate.is_absolute() else base / candidate

        starters = tuple(
            StarterFile(
                source=_resolve(entry["source"]),
                dest=entry.get("dest", Path(entry["source"]).name),
                permission=(
                    Permission.READ_ONLY
                    if entry.get("permission") == "read-only"
                    else Permission.READ_WRITE
                ),
            )
            for entry in payload.get("starter_files", [])
        )
        mounts = tuple(
            DatasetMount(
                source=_resolve(entry["source"]),
                dest=entry.get("dest", Path(entry["source"]).name),
            )
            for entry in payload.get("dataset_mounts", [])
        )
        return cls(
            task_id=payload["task_id"],
            task_description=payload.get("task_description", ""),
            eval_script=_resolve(payload["eval_script"]),
            starter_files=starters,
            dataset_mounts=mounts,
            env_setup=payload.get("env_setup"),
            step_limit=payload.get("step_limit", 50),
            command_timeout=payload.get("command_timeout", 1800.0),
            training_timeout=payload.get("training_timeout", 1800.0),
            memory_enabled=payload.get("memory_enabled", False),
        )


@dataclass(frozen=True)
class RunManifest:
    task_config: Path
    model_config: Path | None
    output_dir: Path
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    executor: str = "local"

    def __post_init__(self) -> None:
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError(f"seeds must be distinct, got {self.seeds}")
        if self.executor not in ("local",):
            raise ValueError(
                f"unknown executor {self.executor!r}; the container backend is an "
                "integration point, not a bundled implementation"
            )


def build_session(
    task: TaskConfig,
    root_dir: Path,
    seed: int,
    executor: CommandExecutor | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> SessionState:
    spec = WorkspaceSpec(
        task_id=task.task_id,
        root_dir=root_dir,
        eval_script=task.eval_script,
        starter_files=task.starter_files,
        dataset_mounts=task.dataset_mounts,
        env_setup=task.env_setup,
    )
    config = SessionConfig(
        step_limit=task.step_limit,
        command_timeout=task.command_timeout,
        training_timeout=task.training_timeout,
    )
    session = provision_workspace(spec, seed, config=config,
                                  executor=executor, clock=clock)
    if task.memory_enabled:
        session.memory = MemoryStore(root_dir / "memory.json")
    return session


def run_one(
    task: TaskConfig,
    client: ModelClient,
    model_config: ModelConfig,
    root_dir: Path,
    seed: int,
    trajectory_path: Path | None = None,
    executor: CommandExecutor | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> tuple[SessionState, EpisodeResult]:
    session = build_session(task, root_dir, seed, executor=executor, clock=clock)
    session.trajectory_path = trajectory_path
    result = run_episode(client, session, model_config, task.task_description)
    return session, result


def run_manifest(
    manifest: RunManifest,
    client_factory: Callable[[int], ModelClient],
    model_config: ModelConfig | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> list[dict]:
    """One episode per seed; returns the per-seed summaries it wrote."""
    task = TaskConfig.load(manifest.task_config)
    if model_config is None:
        model_config = (
            ModelConfig.load(manifest.model_config)
            if manifest.model_config is not None
            else ModelConfig(name="scripted")
        )
    output = manifest.output_dir
    output.mkdir(parents=True, exist_ok=True)
    summaries = []
    for seed in manifest.seeds:
        root = output / f"{task.task_id}-seed{seed}"
        trajectory_path = output / f"{task.task_id}-seed{seed}.trajectory.jsonl"
        session, result = run_one(
            task,
            client_factory(seed),
            model_config,
            root,
            seed,
            trajectory_path=trajectory_path,
            clock=clock,
        )
        summary = {
            "task_id": task.task_id,
            "model": model_config.name,
            "seed": seed,
            "status": session.status,
            "termination": {
                "kind": result.termination.kind,
                "detail": result.termination.detail,
            },
            "steps": result.steps_taken,
            "spend": str(result.ledger.spend),
            "final_metrics": (
                session.final_report.metrics
                if session.final_report is not None and session.final_report.valid
                else None
            ),
            "attempts": [
                {"step": idx, "metrics": report.metrics}
                for idx, report in session.attempt_log
            ],
            "trajectory": str(trajectory_path),
        }
        summary_path = output / f"{task.task_id}-seed{seed}.summary.json"
        summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        summaries.append(summary)
    return summaries
