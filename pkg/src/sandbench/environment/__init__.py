"""Session lifecycle: workspaces, permissions, command execution, termination."""

from sandbench.environment.permissions import (
    Permission,
    PermissionDecision,
    PermissionTable,
    enforce_permission,
)
from sandbench.environment.workspace import (
    DatasetMount,
    SetupError,
    StarterFile,
    WorkspaceSpec,
    workspace_tree_hash,
)
from sandbench.environment.executor import (
    CommandExecutor,
    ContainerExecutor,
    ExecutionResult,
    LocalExecutor,
)
from sandbench.environment.session import (
    SessionConfig,
    SessionError,
    SessionState,
    SessionStatus,
    StepRecord,
    TerminationKind,
    TerminationStatus,
    execute_action,
    finalize,
    provision_workspace,
)
from sandbench.environment.trajectory import (
    Trajectory,
    load_trajectory,
    replay_actions,
    write_trajectory,
)

__all__ = [
    "Permission",
    "PermissionDecision",
    "PermissionTable",
    "enforce_permission",
    "DatasetMount",
    "SetupError",
    "StarterFile",
    "WorkspaceSpec",
    "provision_workspace",
    "workspace_tree_hash",
    "CommandExecutor",
    "ContainerExecutor",
    "ExecutionResult",
    "LocalExecutor",
    "SessionConfig",
    "SessionError",
    "SessionState",
    "SessionStatus",
    "StepRecord",
    "TerminationKind",
    "TerminationStatus",
    "execute_action",
    "finalize",
    "Trajectory",
    "load_trajectory",
    "replay_actions",
    "write_trajectory",
]
