"""File permission rules for one agent workspace.

The table maps path patterns to permissions; the most specific (longest)
matching pattern wins, with registration order breaking exact-length
ties in favour of later entries.  Lookups are pure: the same table, path
and mode always produce the same decision.
"""

from __future__ import annotations

import fnmatch
import posixpath
from dataclasses import dataclass, field
from enum import Enum


class Permission(Enum):
    READ_ONLY = "read-only"
    READ_WRITE = "read-write"
    NO_ACCESS = "no-access"


@dataclass(frozen=True)
class PermissionDecision:
    allowed: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.allowed


ALLOW = PermissionDecision(True)


def normalize(path: str) -> str | None:
    """Normalise to a root-relative POSIX path; None if it escapes the root."""
    candidate = posixpath.normpath(str(path).replace("\\", "/").lstrip("/"))
    if candidate in (".", ""):
        return "."
    if candidate.startswith(".."):
        return None
    return candidate


def _matches(pattern: str, path: str) -> bool:
    if path == pattern:
        return True
    # A directory pattern covers everything beneath it.
    if path.startswith(pattern + "/"):
        return True
    return fnmatch.fnmatchcase(path, pattern)


@dataclass
class PermissionTable:
    """Ordered pattern -> permission rules over root-relative paths."""

    default: Permission = Permission.READ_WRITE
    entries: list[tuple[str, Permission]] = field(default_factory=list)

    def add(self, pattern: str, permission: Permission) -> None:
        normalized = normalize(pattern)
        if normalized is None:
            raise ValueError(f"pattern {pattern!r} escapes the workspace root")
        self.entries.append((normalized, permission))

    def resolve(self, path: str) -> Permission:
        normalized = normalize(path)
        if normalized is None:
            return Permission.NO_ACCESS
        best: Permission | None = None
        best_key = (-1, -1)
        for index, (pattern, permission) in enumerate(self.entries):
            if _matches(pattern, normalized):
                key = (len(pattern), index)
                if key > best_key:
                    best_key = key
                    best = permission
        return best if best is not None else self.default


def enforce_permission(table: PermissionTable, path: str, mode: str) -> PermissionDecision:
    """Decide whether a read or write of ``path`` is allowed.

    Denials carry a human-readable reason suitable for inclusion in an
    agent observation.
    """
    if mode not in ("read", "write"):
        raise ValueError(f"mode must be 'read' or 'write', got {mode!r}")
    normalized = normalize(path)
    if normalized is None:
        return PermissionDecision(
            False, f"path {str(path)!r} is malformed or escapes the workspace"
        )
    permission = table.resolve(normalized)
    if permission is Permission.NO_ACCESS:
        return PermissionDecision(False, f"access to {normalized!r} is not permitted")
    if permission is Permission.READ_ONLY and mode == "write":
        return PermissionDecision(
            False,
            f"{normalized!r} is read-only and cannot be modified",
        )
    return ALLOW
