"""Command executors: how agent shell actions actually run.

The default executor spawns ``bash -c`` locally.  When the framework
itself runs as root (containers, CI), commands are demoted to an
unprivileged uid so the read-only permission bits set during provisioning
actually bind; otherwise the current user's permissions apply directly.

The executor contract is deliberately small so a container-backed
implementation can be swapped in without touching session logic.
"""

from __future__ import annotations

import os
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Protocol, runtime_checkable

DEFAULT_AGENT_UID = 65534  # nobody
TIMEOUT_EXIT_CODE = 124    # same convention as coreutils timeout(1)


@dataclass(frozen=True)
class ExecutionResult:
    output: str          # interleaved stdout + stderr
    exit_code: int
    timed_out: bool
    duration: float


@runtime_checkable
class CommandExecutor(Protocol):
    def run(self, command: str, cwd: Path, timeout: float,
            env: Mapping[str, str] | None = None) -> ExecutionResult: ...


class LocalExecutor:
    """Run commands through a local shell rooted in the session workspace."""

    def __init__(self, agent_uid: int | None = None, shell: str = "/bin/bash") -> None:
        self.shell = shell
        if agent_uid is None and os.name == "posix" and os.geteuid() == 0:
            agent_uid = DEFAULT_AGENT_UID
        self.agent_uid = agent_uid

    def _demote(self):
        uid = self.agent_uid
        if uid is None:
            return None

        def demote() -> None:
            os.setgid(uid)
            os.setgroups([uid])
            os.setuid(uid)

        return demote

    def run(self, command: str, cwd: Path, timeout: float,
            env: Mapping[str, str] | None = None) -> ExecutionResult:
        import time

        base_env = {
            "PATH": os.environ.get("PATH", "/usr/bin:/bin"),
            "HOME": str(cwd),
            "LANG": os.environ.get("LANG", "C.UTF-8"),
        }
        if env:
            base_env.update(env)
        start = time.perf_counter()
        try:
            proc = subprocess.run(
                [self.shell, "-c", command],
                cwd=str(cwd),
                env=base_env,
                stdout=subprocess.PIPE,
                stderr=subprocess.STDOUT,
                timeout=timeout,
                preexec_fn=self._demote(),
            )
            duration = time.perf_counter() - start
            return ExecutionResult(
                output=proc.stdout.decode("utf-8", errors="replace"),
                exit_code=proc.returncode,
                timed_out=False,
                duration=duration,
            )
        except subprocess.TimeoutExpired as exc:
            duration = time.perf_counter() - start
            partial = exc.stdout.decode("utf-8", errors="replace") if exc.stdout else ""
            return ExecutionResult(
                output=partial,
                exit_code=TIMEOUT_EXIT_CODE,
                timed_out=True,
                duration=duration,
            )


class ContainerExecutor:
    """Placeholder for a container-backed executor.

    The session layer only needs the ``CommandExecutor`` protocol; wiring
    an actual container runtime (image management, mounts, lifecycles) is
    a deployment concern and intentionally not implemented here.
    """

    def __init__(self, image: str) -> None:
        self.image = image

    def run(self, command: str, cwd: Path, timeout: float,
            env: Mapping[str, str] | None = None) -> ExecutionResult:
        raise NotImplementedError(
            "ContainerExecutor is an integration point; provide your own "
            "CommandExecutor implementation backed by your container runtime"
        )
