"""Workspace provisioning: copy task inputs into an isolated directory tree.

Layout under the session root:

    <root>/workspace   agent-writable working directory
    <root>/data        datasets, read-only
    <root>/eval        the evaluation script, read-only

Provisioning is deterministic: the same spec and seed produce the same
tree content hash.
"""

from __future__ import annotations

import hashlib
import os
import shutil
from dataclasses import dataclass
from pathlib import Path

from sandbench.environment.permissions import Permission, PermissionTable, normalize

WORKSPACE_DIR = "workspace"
DATA_DIR = "data"
EVAL_DIR = "eval"


class SetupError(RuntimeError):
    """Workspace provisioning failed."""


@dataclass(frozen=True)
class StarterFile:
    source: Path
    dest: str
    permission: Permission = Permission.READ_WRITE


@dataclass(frozen=True)
class DatasetMount:
    source: Path
    dest: str


@dataclass(frozen=True)
class WorkspaceSpec:
    """Everything needed to set up one task workspace."""

    task_id: str
    root_dir: Path
    eval_script: Path
    starter_files: tuple[StarterFile, ...] = ()
    dataset_mounts: tuple[DatasetMount, ...] = ()
    # Dependency manifest; opaque to the framework, recorded for provenance.
    env_setup: dict | None = None

    def __post_init__(self) -> None:
        if not self.task_id:
            raise ValueError("task_id must be non-empty")
        # All internal paths are absolute so they stay valid regardless of
        # which working directory commands later run from.
        object.__setattr__(self, "root_dir", Path(self.root_dir).absolute())
        object.__setattr__(self, "eval_script", Path(self.eval_script).absolute())
        for sf in self.starter_files:
            if normalize(sf.dest) is None:
                raise ValueError(f"starter dest {sf.dest!r} escapes the workspace")
        for mount in self.dataset_mounts:
            if normalize(mount.dest) is None:
                raise ValueError(f"dataset dest {mount.dest!r} escapes the workspace")


def _copy_any(source: Path, dest: Path) -> None:
    if source.is_dir():
        shutil.copytree(source, dest, copy_function=shutil.copyfile)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(source, dest)


def _apply_mode(path: Path, file_mode: int, dir_mode: int) -> None:
    if path.is_dir():
        for child in path.rglob("*"):
            os.chmod(child, dir_mode if child.is_dir() else file_mode)
        os.chmod(path, dir_mode)
    else:
        os.chmod(path, file_mode)


def provision(spec: WorkspaceSpec) -> PermissionTable:
    """Populate the root directory and build the matching permission table.

    Read-only material is owned by the framework user with 0444/0555
    modes; the agent-facing workspace is world-writable so a dropped-
    privilege executor can work in it.
    """
    root = spec.root_dir
    if root.exists() and any(root.iterdir()):
        raise SetupError(f"workspace root {root} already exists and is not empty")
    for sf in spec.starter_files:
        if not sf.source.exists():
            raise SetupError(f"starter file {sf.source} does not exist")
    for mount in spec.dataset_mounts:
        if not mount.source.exists():
            raise SetupError(f"dataset source {mount.source} does not exist")
    if not spec.eval_script.exists():
        raise SetupError(f"evaluation script {spec.eval_script} does not exist")

    try:
        workspace = root / WORKSPACE_DIR
        data_root = root / DATA_DIR
        eval_root = root / EVAL_DIR
        for directory in (workspace, data_root, eval_root):
            directory.mkdir(parents=True)

        table = PermissionTable(default=Permission.READ_WRITE)
        table.add(DATA_DIR, Permission.READ_ONLY)
        table.add(EVAL_DIR, Permission.READ_ONLY)

        for sf in spec.starter_files:
            dest = workspace / sf.dest
            _copy_any(sf.source, dest)
            if sf.permission is Permission.READ_ONLY:
                _apply_mode(dest, 0o444, 0o555)
                table.add(f"{WORKSPACE_DIR}/{sf.dest}", Permission.READ_ONLY)
            else:
                _apply_mode(dest, 0o666, 0o777)
        for mount in spec.dataset_mounts:
            dest = data_root / mount.dest
            _copy_any(mount.source, dest)
            _apply_mode(dest, 0o444, 0o555)

        eval_dest = eval_root / spec.eval_script.name
        shutil.copyfile(spec.eval_script, eval_dest)
        # Executable so script-style evaluation entrypoints keep working.
        os.chmod(eval_dest, 0o555)

        os.chmod(data_root, 0o755)
        os.chmod(eval_root, 0o755)
        # The agent may run as an unprivileged user; it owns nothing here,
        # so the working directory must be open.
        os.chmod(workspace, 0o777)
        os.chmod(root, 0o755)
    except OSError as exc:
        raise SetupError(f"failed to provision workspace at {root}: {exc}") from exc
    return table


def eval_script_path(spec: WorkspaceSpec) -> Path:
    return spec.root_dir / EVAL_DIR / spec.eval_script.name


def workspace_tree_hash(root: Path) -> str:
    """Content hash over relative paths and file bytes, ignoring metadata."""
    digest = hashlib.sha256()
    for path in sorted(root.rglob("*")):
        rel = path.relative_to(root).as_posix()
        digest.update(rel.encode())
        if path.is_file():
            digest.update(b"\0")
            digest.update(path.read_bytes())
        digest.update(b"\n")
    return digest.hexdigest()
