"""Line-oriented editing with permission and syntax gating.

A rejected edit (permission, range or syntax) never touches the file:
new content is only written after every check passes, so the on-disk
bytes of a rejected edit are identical before and after.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from sandbench.environment.permissions import enforce_permission
from sandbench.environment.session import SessionState
from sandbench.tools.viewer import (
    ViewerState,
    get_viewer,
    render_window,
    resolve_in_root,
)

SyntaxChecker = Callable[[str, str], Optional[str]]


def python_syntax_checker(source: str, filename: str) -> Optional[str]:
    try:
        compile(source, filename, "exec")
    except SyntaxError as exc:
        return f"SyntaxError: {exc.msg} (line {exc.lineno})"
    return None


# Keyed by file extension; unknown extensions are not checked.
SYNTAX_CHECKERS: dict[str, SyntaxChecker] = {
    ".py": python_syntax_checker,
}


@dataclass
class EditResult:
    applied: bool
    diagnostics: str
    new_window: ViewerState | None = None
    rendered: str = ""

    def observation(self) -> str:
        if not self.applied:
            return self.diagnostics
        parts = [self.diagnostics] if self.diagnostics else []
        parts.append(self.rendered)
        return "\n".join(parts)


def _target_path(session: SessionState, path: str | None) -> tuple[Path | None, str]:
    if path is not None:
        return resolve_in_root(session, path)
    viewer = get_viewer(session)
    if viewer.open_file is None:
        return None, "No file is open. Use the open command or pass a path."
    return resolve_in_root(session, str(viewer.open_file))


def _check_syntax(path: Path, content: str) -> Optional[str]:
    checker = SYNTAX_CHECKERS.get(path.suffix)
    if checker is None:
        return None
    return checker(content, str(path))


def _write_and_show(session: SessionState, path: Path, rel: str, lines: list[str],
                    focus_line: int, diagnostics: str = "") -> EditResult:
    path.write_text("\n".join(lines) + ("\n" if lines else ""))
    viewer = get_viewer(session)
    viewer.open_file = path
    viewer.display_path = rel
    session.open_file = path
    viewer.window_start = viewer.clamp(focus_line, len(lines))
    return EditResult(
        applied=True,
        diagnostics=diagnostics,
        new_window=viewer,
        rendered=render_window(viewer, lines),
    )


def edit_lines(session: SessionState, start: int, end: int, replacement: str,
               path: str | None = None) -> EditResult:
    """Replace lines [start, end] (1-based, inclusive) of the open file."""
    absolute, rel = _target_path(session, path)
    if absolute is None:
        return EditResult(False, rel)
    decision = enforce_permission(session.permissions, rel, "write")
    if not decision:
        return EditResult(False, f"Edit rejected: {decision.reason}")
    if not absolute.exists():
        return EditResult(False, f"File {rel!r} not found.")
    lines = absolute.read_text(errors="replace").splitlines()
    if not (1 <= start <= end <= max(len(lines), 1)):
        return EditResult(
            False,
            f"Invalid line range {start}:{end}; the file has {len(lines)} lines.",
        )
    new_lines = replacement.splitlines()
    candidate = lines[:start - 1] + new_lines + lines[end:]
    content = "\n".join(candidate) + ("\n" if candidate else "")
    diagnostics = _check_syntax(absolute, content)
    if diagnostics is not None:
        return EditResult(
            False,
            "Edit not applied, the updated file would contain a syntax error:\n"
            f"{diagnostics}\nThe file is unchanged; fix the edit and try again.",
        )
    return _write_and_show(session, absolute, rel, candidate, start)


def insert_lines(session: SessionState, after_line: int, text: str,
                 path: str | None = None) -> EditResult:
    """Insert text after the given line (0 inserts at the top)."""
    absolute, rel = _target_path(session, path)
    if absolute is None:
        return EditResult(False, rel)
    decision = enforce_permission(session.permissions, rel, "write")
    if not decision:
        return EditResult(False, f"Insert rejected: {decision.reason}")
    if not absolute.exists():
        return EditResult(False, f"File {rel!r} not found.")
    lines = absolute.read_text(errors="replace").splitlines()
    if not (0 <= after_line <= len(lines)):
        return EditResult(
            False,
            f"Invalid insert position {after_line}; the file has {len(lines)} lines.",
        )
    new_lines = text.splitlines()
    candidate = lines[:after_line] + new_lines + lines[after_line:]
    content = "\n".join(candidate) + ("\n" if candidate else "")
    diagnostics = _check_syntax(absolute, content)
    if diagnostics is not None:
        return EditResult(
            False,
            "Insert not applied, the updated file would contain a syntax error:\n"
            f"{diagnostics}\nThe file is unchanged; fix the insert and try again.",
        )
    return _write_and_show(session, absolute, rel, candidate, max(after_line, 1))


def create_file(session: SessionState, path: str) -> EditResult:
    """Create an empty file and open it in the viewer."""
    absolute, rel = resolve_in_root(session, path)
    if absolute is None:
        return EditResult(False, rel)
    if absolute.exists():
        return EditResult(False, f"File {path!r} already exists; open it instead.")
    parent_rel = os.path.dirname(rel) or "."
    decision = enforce_permission(session.permissions, rel, "write")
    parent_decision = enforce_permission(session.permissions, parent_rel, "write")
    if not decision or not parent_decision:
        reason = decision.reason or parent_decision.reason
        return EditResult(False, f"Cannot create {path!r}: {reason}")
    if not absolute.parent.exists():
        return EditResult(False, f"Cannot create {path!r}: parent directory does not exist.")
    absolute.touch()
    # Files the agent creates must stay editable by the demoted shell user.
    os.chmod(absolute, 0o666)
    return _write_and_show(session, absolute, rel, [], 1)
