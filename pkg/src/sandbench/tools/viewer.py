"""Windowed file viewer.

The window is ``window_size`` lines; scrolling moves by window_size minus
``overlap`` so consecutive pages share context lines.  The window start is
always clamped to [1, max(1, total - window_size + 1)].
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from sandbench.environment.permissions import enforce_permission
from sandbench.environment.session import SessionState

DEFAULT_WINDOW_SIZE = 1000
DEFAULT_OVERLAP = 2


@dataclass
class ViewerState:
    open_file: Path | None = None
    # Root-relative form of open_file; observations use it so recorded
    # trajectories replay identically from any workspace location.
    display_path: str = ""
    window_start: int = 1
    window_size: int = DEFAULT_WINDOW_SIZE
    overlap: int = DEFAULT_OVERLAP

    def max_start(self, total_lines: int) -> int:
        return max(1, total_lines - self.window_size + 1)

    def clamp(self, line: int, total_lines: int) -> int:
        return max(1, min(line, self.max_start(total_lines)))


def get_viewer(session: SessionState) -> ViewerState:
    if session.viewer is None:
        session.viewer = ViewerState()
    return session.viewer


def resolve_in_root(session: SessionState, path: str) -> tuple[Path | None, str]:
    """Resolve a user-supplied path against the cwd, keeping it inside the root.

    Returns (absolute path, root-relative string); (None, reason) when the
    path escapes the session root.
    """
    candidate = Path(path)
    absolute = candidate if candidate.is_absolute() else session.cwd / candidate
    absolute = absolute.resolve()
    root = session.spec.root_dir.resolve()
    if absolute != root and root not in absolute.parents:
        return None, f"path {path!r} is outside the session root"
    return absolute, absolute.relative_to(root).as_posix()


def _read_lines(path: Path) -> list[str]:
    return path.read_text(errors="replace").splitlines()


def render_window(viewer: ViewerState, lines: list[str]) -> str:
    total = len(lines)
    start = viewer.clamp(viewer.window_start, total)
    viewer.window_start = start
    end = min(total, start + viewer.window_size - 1)
    header = f"[File: {viewer.display_path or viewer.open_file} ({total} lines total)]"
    body = []
    if start > 1:
        body.append(f"({start - 1} lines above)")
    for number in range(start, end + 1):
        body.append(f"{number}:{lines[number - 1]}")
    if end < total:
        body.append(f"({total - end} lines below)")
    elif total == 0:
        body.append("(empty file)")
    return "\n".join([header] + body)


def open_file(session: SessionState, path: str, line: int | None = None) -> str:
    """Open a file in the viewer, positioning the window to include ``line``."""
    absolute, rel = resolve_in_root(session, path)
    if absolute is None:
        return rel
    decision = enforce_permission(session.permissions, rel, "read")
    if not decision:
        return f"Cannot open {path!r}: {decision.reason}"
    if not absolute.exists():
        return f"File {path!r} not found."
    if absolute.is_dir():
        return f"{path!r} is a directory; use search_dir or find_file to explore it."
    viewer = get_viewer(session)
    viewer.open_file = absolute
    viewer.display_path = rel
    session.open_file = absolute
    lines = _read_lines(absolute)
    requested = 1 if line is None else line
    notice = ""
    if line is not None and line > len(lines):
        notice = f"(requested line {line} is beyond the end of the file)\n"
    viewer.window_start = viewer.clamp(requested, len(lines))
    return notice + render_window(viewer, lines)


def goto(session: SessionState, line: int) -> str:
    viewer = get_viewer(session)
    if viewer.open_file is None:
        return "No file is open. Use the open command first."
    lines = _read_lines(viewer.open_file)
    notice = ""
    if line > len(lines):
        notice = f"(requested line {line} is beyond the end of the file)\n"
    viewer.window_start = viewer.clamp(line, len(lines))
    return notice + render_window(viewer, lines)


def scroll(session: SessionState, direction: str) -> str:
    if direction not in ("up", "down"):
        return f"Unknown scroll direction {direction!r}."
    viewer = get_viewer(session)
    if viewer.open_file is None:
        return "No file is open. Use the open command first."
    lines = _read_lines(viewer.open_file)
    stride = viewer.window_size - viewer.overlap
    delta = stride if direction == "down" else -stride
    viewer.window_start = viewer.clamp(viewer.window_start + delta, len(lines))
    return render_window(viewer, lines)
