"""The fixed command interface agents use to perceive and edit the workspace."""

from sandbench.tools.registry import ToolSpec, ToolRegistry, default_registry
from sandbench.tools.viewer import ViewerState, open_file, goto, scroll
from sandbench.tools.editor import EditResult, create_file, edit_lines, insert_lines
from sandbench.tools.search import find_file, search_dir, search_file
from sandbench.tools.evaluation import ValidationReport, run_validation
from sandbench.tools.dispatch import dispatch_command

__all__ = [
    "ToolSpec",
    "ToolRegistry",
    "default_registry",
    "ViewerState",
    "open_file",
    "goto",
    "scroll",
    "EditResult",
    "create_file",
    "edit_lines",
    "insert_lines",
    "find_file",
    "search_dir",
    "search_file",
    "ValidationReport",
    "run_validation",
    "dispatch_command",
]
