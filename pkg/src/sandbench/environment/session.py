"""One agent session: the step loop's state machine and termination rules."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from sandbench.environment.executor import (
    CommandExecutor,
    LocalExecutor,
    TIMEOUT_EXIT_CODE,
)
from sandbench.environment.permissions import PermissionTable
from sandbench.environment.workspace import (
    WORKSPACE_DIR,
    SetupError,
    WorkspaceSpec,
    provision,
)

DEFAULT_STEP_LIMIT = 50
DEFAULT_COMMAND_TIMEOUT = 1800.0
DEFAULT_OUTPUT_CAP = 64 * 1024

EMPTY_OUTPUT_MARKER = "(no output)"
TRUNCATION_MARKER = "\n[output truncated]\n"

# Commands that launch training/evaluation scripts run under the task's
# training timeout instead of the per-command timeout.
TRAINING_COMMAND_RE = re.compile(r"^\s*(python|deepspeed|torchrun)")

# Interactive programs are rejected when invoked bare: they would block the
# step loop waiting for input that never comes.
INTERACTIVE_COMMANDS = frozenset(
    {"python", "python3", "ipython", "vim", "vi", "nano", "emacs", "less", "more"}
)

_CD_RE = re.compile(r"^cd(?:\s+(?P<target>\S+))?\s*$")


class SessionError(RuntimeError):
    """A session precondition was violated."""


class SessionStatus:
    RUNNING = "running"
    SUBMITTED = "submitted"
    AUTO_SUBMITTED = "auto-submitted"
    TERMINATED = "terminated"


class TerminationKind:
    """Closed taxonomy of session outcomes."""

    SUBMIT = "submit"
    AUTOSUBMIT = "autosubmit"
    CONTEXT_LENGTH_EXCEEDED = "context-length-exceeded"
    EVALUATION_ERROR = "evaluation-error"
    FILE_PERMISSION_ERROR = "file-permission-error"
    COST_LIMIT_EXCEEDED = "cost-limit-exceeded"
    FORMAT_ERROR = "format-error"
    RUNTIME_ERROR = "runtime-error"

    ALL = (
        SUBMIT,
        AUTOSUBMIT,
        CONTEXT_LENGTH_EXCEEDED,
        EVALUATION_ERROR,
        FILE_PERMISSION_ERROR,
        COST_LIMIT_EXCEEDED,
        FORMAT_ERROR,
        RUNTIME_ERROR,
    )
    ERRORS = ALL[2:]


@dataclass(frozen=True)
class TerminationStatus:
    kind: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.kind not in TerminationKind.ALL:
            raise ValueError(f"unknown termination kind {self.kind!r}")

    @property
    def is_error(self) -> bool:
        return self.kind in TerminationKind.ERRORS


@dataclass
class StepRecord:
    index: int
    thought: str
    action: str
    observation: str
    wall_time: float
    exit_code: int


@dataclass(frozen=True)
class SessionConfig:
    step_limit: int = DEFAULT_STEP_LIMIT
    command_timeout: float = DEFAULT_COMMAND_TIMEOUT
    training_timeout: float = DEFAULT_COMMAND_TIMEOUT
    output_byte_cap: int = DEFAULT_OUTPUT_CAP


@dataclass
class SessionState:
    """Mutable state of one running agent session."""

    spec: WorkspaceSpec
    permissions: PermissionTable
    seed: int
    config: SessionConfig = field(default_factory=SessionConfig)
    executor: CommandExecutor = field(default_factory=LocalExecutor)
    clock: Callable[[], float] = time.perf_counter
    model_name: str = ""
    trajectory_path: Optional[Path] = None

    status: str = SessionStatus.RUNNING
    termination: Optional[TerminationStatus] = None
    steps: list[StepRecord] = field(default_factory=list)
    cwd: Path = None  # type: ignore[assignment]
    open_file: Optional[Path] = None
    viewer: object = None
    memory: object = None
    literature_fetcher: object = None
    # (step_index, ValidationReport) for every valid report; the basis of
    # best-attempt aggregation.
    attempt_log: list = field(default_factory=list)
    # every report, valid or not
    report_log: list = field(default_factory=list)
    final_report: object = None

    def __post_init__(self) -> None:
        if self.cwd is None:
            self.cwd = self.workspace_dir

    @property
    def workspace_dir(self) -> Path:
        return self.spec.root_dir / WORKSPACE_DIR

    @property
    def running(self) -> bool:
        return self.status == SessionStatus.RUNNING

    @property
    def steps_remaining(self) -> int:
        return self.config.step_limit - len(self.steps)

    def require_running(self) -> None:
        if not self.running:
            raise SessionError(f"session is {self.status}, not running")

    def record_step(self, thought: str, action: str, observation: str,
                    wall_time: float, exit_code: int) -> StepRecord:
        self.require_running()
        if len(self.steps) >= self.config.step_limit:
            raise SessionError("step limit reached")
        if not observation:
            observation = EMPTY_OUTPUT_MARKER
        record = StepRecord(
            index=len(self.steps),
            thought=thought,
            action=action,
            observation=observation,
            wall_time=wall_time,
            exit_code=exit_code,
        )
        self.steps.append(record)
        return record

    def relative_cwd(self) -> str:
        try:
            rel = self.cwd.relative_to(self.spec.root_dir)
        except ValueError:
            return str(self.cwd)
        return str(rel)


def provision_workspace(
    spec: WorkspaceSpec,
    seed: int,
    config: SessionConfig | None = None,
    executor: CommandExecutor | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> SessionState:
    """Set up the on-disk workspace and return a running session."""
    table = provision(spec)
    return SessionState(
        spec=spec,
        permissions=table,
        seed=seed,
        config=config or SessionConfig(),
        executor=executor or LocalExecutor(),
        clock=clock,
    )


def truncate_output(text: str, cap: int) -> str:
    """Head+tail truncation with an explicit marker once ``cap`` bytes are hit."""
    encoded = text.encode("utf-8", errors="replace")
    if len(encoded) <= cap:
        return text
    half = max(1, cap // 2)
    head = encoded[:half].decode("utf-8", errors="replace")
    tail = encoded[-half:].decode("utf-8", errors="replace")
    return head + TRUNCATION_MARKER + tail


def _is_interactive(command: str) -> bool:
    return command.strip() in INTERACTIVE_COMMANDS


def is_training_command(command: str) -> bool:
    return TRAINING_COMMAND_RE.match(command) is not None


def execute_action(session: SessionState, command: str,
                   thought: str = "") -> tuple[str, StepRecord]:
    """Run one shell action and record the step.

    Failures of any kind become observations; this function only raises
    for protocol violations (session not running, step limit exhausted).
    """
    session.require_running()
    if len(session.steps) >= session.config.step_limit:
        raise SessionError("step limit reached")
    start = session.clock()
    command = command.strip()

    if not command:
        observation = "No command provided."
        record = session.record_step(thought, command, observation,
                                     session.clock() - start, 1)
        return record.observation, record

    if _is_interactive(command):
        observation = (
            f"Interactive command {command!r} is not supported in this "
            "environment. Write a script to a file and run it instead."
        )
        record = session.record_step(thought, command, observation,
                                     session.clock() - start, 1)
        return record.observation, record

    cd_match = _CD_RE.match(command)
    if cd_match:
        observation, exit_code = _handle_cd(session, cd_match.group("target"))
        record = session.record_step(thought, command, observation,
                                     session.clock() - start, exit_code)
        return record.observation, record

    timeout = (
        session.config.training_timeout
        if is_training_command(command)
        else session.config.command_timeout
    )
    try:
        result = session.executor.run(command, cwd=session.cwd, timeout=timeout)
        observation = truncate_output(result.output, session.config.output_byte_cap)
        exit_code = result.exit_code
        if result.timed_out:
            observation = (
                observation
                + f"\n[command interrupted: exceeded the {timeout:.0f}s time limit]"
            )
            exit_code = TIMEOUT_EXIT_CODE
    except Exception as exc:  # executor failures must not escape the session
        observation = f"Command failed to execute: {exc}"
        exit_code = -1
    record = session.record_step(thought, command, observation,
                                 session.clock() - start, exit_code)
    return record.observation, record


def _handle_cd(session: SessionState, target: str | None) -> tuple[str, int]:
    destination = (
        session.workspace_dir
        if target is None
        else (session.cwd / target).resolve()
    )
    root = session.spec.root_dir.resolve()
    if not destination.is_dir():
        return f"cd: {target}: no such directory", 1
    if destination != root and root not in destination.parents:
        return f"cd: {target}: outside the session root", 1
    session.cwd = destination
    return "", 0


def finalize(session: SessionState, kind: str, detail: str = "") -> TerminationStatus:
    """Terminate the session exactly once and flush the trajectory.

    Step exhaustion enters as AUTOSUBMIT: the current workspace is
    evaluated and a failing evaluation downgrades the outcome to an
    evaluation error.
    """
    session.require_running()
    if kind == TerminationKind.SUBMIT:
        session.status = SessionStatus.SUBMITTED
        termination = TerminationStatus(kind, detail)
    elif kind == TerminationKind.AUTOSUBMIT:
        from sandbench.tools.evaluation import run_validation

        report = run_validation(session)
        session.final_report = report
        if report.valid:
            session.status = SessionStatus.AUTO_SUBMITTED
            termination = TerminationStatus(kind, detail)
        else:
            session.status = SessionStatus.TERMINATED
            termination = TerminationStatus(
                TerminationKind.EVALUATION_ERROR,
                detail or f"auto-submission failed: {report.raw_output[:500]}",
            )
    elif kind in TerminationKind.ERRORS:
        session.status = SessionStatus.TERMINATED
        termination = TerminationStatus(kind, detail)
    else:
        raise ValueError(f"unknown termination kind {kind!r}")
    session.termination = termination
    if session.trajectory_path is not None:
        from sandbench.environment.trajectory import write_trajectory

        write_trajectory(session, session.trajectory_path)
    return termination
