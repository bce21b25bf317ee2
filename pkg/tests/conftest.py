from __future__ import annotations

import itertools
import json
import os
from pathlib import Path

import pytest

from sandbench.environment.permissions import Permission
from sandbench.environment.session import SessionConfig, provision_workspace
from sandbench.environment.workspace import DatasetMount, StarterFile, WorkspaceSpec

EVAL_SCRIPT = """\
import json, pathlib, sys
p = pathlib.Path("solution.txt")
if not p.exists():
    print("missing solution artifact")
    sys.exit(1)
try:
    score = float(p.read_text().strip())
except ValueError:
    print("solution.txt does not contain a number")
    sys.exit(1)
print(json.dumps({"score": score}))
"""

STARTER = "def main():\n    return 41\n"
DATASET = "a,b\n1,2\n3,4\n"


class FakeClock:
    """Deterministic monotonic clock for byte-identical trajectories."""

    def __init__(self) -> None:
        self._counter = itertools.count()

    def __call__(self) -> float:
        return float(next(self._counter))


@pytest.fixture(autouse=True)
def _traversable_tmp(tmp_path):
    # pytest creates its base temp dir 0700; the demoted agent user needs
    # execute bits on every ancestor to reach the workspace.
    path = tmp_path
    while path != path.parent:
        try:
            mode = path.stat().st_mode & 0o7777
            if mode & 0o011 != 0o011:
                os.chmod(path, mode | 0o711)
        except PermissionError:
            break
        if path == Path("/tmp"):
            break
        path = path.parent
    yield


@pytest.fixture
def task_inputs(tmp_path: Path) -> dict:
    src = tmp_path / "task-src"
    src.mkdir()
    (src / "eval.py").write_text(EVAL_SCRIPT)
    (src / "starter.py").write_text(STARTER)
    (src / "data.csv").write_text(DATASET)
    return {
        "dir": src,
        "eval_script": src / "eval.py",
        "starter": src / "starter.py",
        "dataset": src / "data.csv",
    }


def make_spec(task_inputs: dict, root: Path, **kwargs) -> WorkspaceSpec:
    defaults = dict(
        task_id="toy",
        root_dir=root,
        eval_script=task_inputs["eval_script"],
        starter_files=(StarterFile(task_inputs["starter"], "starter.py"),),
        dataset_mounts=(DatasetMount(task_inputs["dataset"], "data.csv"),),
    )
    defaults.update(kwargs)
    return WorkspaceSpec(**defaults)


@pytest.fixture
def session(task_inputs, tmp_path):
    spec = make_spec(task_inputs, tmp_path / "root")
    return provision_workspace(spec, seed=0, clock=FakeClock())


@pytest.fixture
def short_session(task_inputs, tmp_path):
    spec = make_spec(task_inputs, tmp_path / "root")
    config = SessionConfig(step_limit=50, command_timeout=20.0, training_timeout=20.0)
    return provision_workspace(spec, seed=0, config=config, clock=FakeClock())


def write_task_config(task_inputs: dict, path: Path, **overrides) -> Path:
    payload = {
        "task_id": "toy",
        "task_description": "Write the best score you can into solution.txt.",
        "eval_script": str(task_inputs["eval_script"]),
        "starter_files": [{"source": str(task_inputs["starter"]), "dest": "starter.py"}],
        "dataset_mounts": [{"source": str(task_inputs["dataset"]), "dest": "data.csv"}],
        "step_limit": 50,
        "command_timeout": 30.0,
        "training_timeout": 30.0,
    }
    payload.update(overrides)
    path.write_text(json.dumps(payload))
    return path
