"""Plain-text search over the workspace, with capped listings."""

from __future__ import annotations

from pathlib import Path

from sandbench.environment.permissions import enforce_permission
from sandbench.environment.session import SessionState
from sandbench.tools.viewer import get_viewer, resolve_in_root

FILE_CAP = 50
LINE_CAP = 100


def _is_texty(path: Path) -> bool:
    try:
        chunk = path.open("rb").read(2048)
    except OSError:
        return False
    return b"\0" not in chunk


def _iter_readable_files(session: SessionState, root: Path):
    for path in sorted(root.rglob("*")):
        if not path.is_file():
            continue
        _, rel = resolve_in_root(session, str(path))
        if enforce_permission(session.permissions, rel, "read") and _is_texty(path):
            yield path


def _resolve_dir(session: SessionState, directory: str | None):
    target = directory if directory is not None else str(session.cwd)
    absolute, rel = resolve_in_root(session, target)
    if absolute is None:
        return None, rel
    if not absolute.is_dir():
        return None, f"Directory {directory!r} not found."
    decision = enforce_permission(session.permissions, rel, "read")
    if not decision:
        return None, f"Cannot search {directory!r}: {decision.reason}"
    return absolute, rel


def search_dir(session: SessionState, term: str, directory: str | None = None) -> str:
    """Per-file match counts for ``term`` under a directory."""
    root, rel = _resolve_dir(session, directory)
    if root is None:
        return rel
    hits: list[tuple[str, int]] = []
    for path in _iter_readable_files(session, root):
        count = path.read_text(errors="replace").count(term)
        if count:
            hits.append((str(path.relative_to(session.spec.root_dir)), count))
    if not hits:
        return f'No matches for "{term}" in {rel}.'
    shown = hits[:FILE_CAP]
    lines = [f'Found matches for "{term}" in {len(hits)} file(s):']
    lines += [f"  {name} ({count} matches)" for name, count in shown]
    if len(hits) > len(shown):
        lines.append(f"  [listing capped at {FILE_CAP} files; refine the search term]")
    return "\n".join(lines)


def search_file(session: SessionState, term: str, file: str | None = None) -> str:
    """Per-line matches for ``term`` in one file (default: the open file)."""
    if file is None:
        viewer = get_viewer(session)
        if viewer.open_file is None:
            return "No file is open. Use the open command or pass a file."
        file = str(viewer.open_file)
    absolute, rel = resolve_in_root(session, file)
    if absolute is None:
        return rel
    decision = enforce_permission(session.permissions, rel, "read")
    if not decision:
        return f"Cannot search {file!r}: {decision.reason}"
    if not absolute.is_file():
        return f"File {file!r} not found."
    matches = [
        (number, line)
        for number, line in enumerate(absolute.read_text(errors="replace").splitlines(), 1)
        if term in line
    ]
    if not matches:
        return f'No matches for "{term}" in {rel}.'
    shown = matches[:LINE_CAP]
    lines = [f'Found {len(matches)} matching line(s) for "{term}" in {rel}:']
    lines += [f"  {number}:{line}" for number, line in shown]
    if len(matches) > len(shown):
        lines.append(f"  [listing capped at {LINE_CAP} lines; refine the search term]")
    return "\n".join(lines)


def find_file(session: SessionState, name: str, directory: str | None = None) -> str:
    """List files matching ``name`` (glob allowed) under a directory."""
    root, rel = _resolve_dir(session, directory)
    if root is None:
        return rel
    matches = sorted(
        str(path.relative_to(session.spec.root_dir))
        for path in root.rglob(name)
        if path.is_file()
    )
    if not matches:
        return f'No file named "{name}" under {rel}.'
    shown = matches[:FILE_CAP]
    lines = [f'Found {len(matches)} file(s) named "{name}":']
    lines += [f"  {m}" for m in shown]
    if len(matches) > len(shown):
        lines.append(f"  [listing capped at {FILE_CAP} files]")
    return "\n".join(lines)
